#include "cli/manifest.hpp"

#include <json.hpp>

#include "auction/error.hpp"
#include "cli/cli.hpp"

namespace auction::cli {

using nlohmann::ordered_json;

std::string to_json(const RunManifest& m) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = m.command;
  j["args"] = m.args;
  j["inputs"] = m.inputs;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["seed"] = m.seed ? ordered_json(*m.seed) : ordered_json(nullptr);
  j["output"] = m.output;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  RunManifest m;
  try {
    const auto j = ordered_json::parse(text);
    m.command = j.at("command").get<std::string>();
    m.args = j.at("args").get<std::vector<std::string>>();
    m.inputs = j.value("inputs", std::vector<std::string>{});
    if (j.contains("parameters")) {
      for (const auto& [k, v] : j.at("parameters").items()) m.parameters.emplace_back(k, v.get<std::string>());
    }
    if (j.contains("seed") && !j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.output = j.value("output", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  return m;
}

std::string manifest_path_for(const std::string& output, bool output_is_directory) {
  if (output_is_directory) {
    std::string dir = output;
    while (dir.size() > 1 && dir.back() == '/') dir.pop_back();
    return dir + "/manifest.json";
  }
  return output + ".manifest.json";
}

}  // namespace auction::cli
