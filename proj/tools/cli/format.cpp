#include "cli/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>

#include "auction/error.hpp"

namespace auction::cli {

std::string fmt(double v) {
  if (v == 0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) s += sep;
    s += parts[i];
  }
  return s;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, "malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

double parse_log_distance(std::string_view text) {
  double v = 0;
  if (ends_with(text, "bp")) {
    v = parse_double(text.substr(0, text.size() - 2), "distance") * 1e-4;
  } else if (ends_with(text, "%")) {
    v = parse_double(text.substr(0, text.size() - 1), "distance") * 1e-2;
  } else if (ends_with(text, "x")) {
    v = parse_double(text.substr(0, text.size() - 1), "distance");
  } else {
    v = parse_double(text, "distance") * 1e-4;
  }
  if (!(v > 0)) throw Error(ErrorCode::kInvalidArgument, "distance must be positive: " + std::string(text));
  return v;
}

std::int64_t parse_duration_us(std::string_view text) {
  double scale = 1e6;
  std::string_view num = text;
  if (ends_with(text, "us")) {
    scale = 1;
    num = text.substr(0, text.size() - 2);
  } else if (ends_with(text, "ms")) {
    scale = 1e3;
    num = text.substr(0, text.size() - 2);
  } else if (ends_with(text, "s")) {
    num = text.substr(0, text.size() - 1);
  }
  const double v = parse_double(num, "duration") * scale;
  if (v < 0) throw Error(ErrorCode::kInvalidArgument, "duration must be >= 0: " + std::string(text));
  return std::llround(v);
}

}  // namespace auction::cli
