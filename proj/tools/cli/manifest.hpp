#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace auction::cli {

// Everything needed to regenerate one output: the command line verbatim plus
// a resolved view of inputs and parameters for humans. No timestamps, so a
// re-run produces the same manifest byte for byte.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<std::uint64_t> seed;
  std::string output;
};

std::string to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

// <output>.manifest.json, or <dir>/manifest.json for directory outputs.
std::string manifest_path_for(const std::string& output, bool output_is_directory);

}  // namespace auction::cli
