#include "auction/event_log.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "auction/error.hpp"

namespace auction {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(ErrorCode::kParse, "malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

OrderEvent parse_row(std::string_view line) {
  const auto f = split(line);
  if (f.size() != 9) {
    throw Error(ErrorCode::kParse, "expected 9 fields, found " + std::to_string(f.size()));
  }
  OrderEvent ev;
  ev.timestamp_us = parse_int(f[0], "timestamp_us");
  if (f[1].empty()) throw Error(ErrorCode::kParse, "empty order_id");
  ev.order_id = std::string(f[1]);
  ev.action = parse_action(f[2]);

  const bool cancel = ev.action == Action::kCancel;
  if (!f[3].empty() || !cancel) ev.side = parse_side(f[3]);
  if (!f[4].empty() || !cancel) ev.type = parse_order_type(f[4]);
  if (!f[5].empty()) ev.price_units = parse_price_units(f[5]);
  if (!f[6].empty() || !cancel) ev.quantity = parse_int(f[6], "qty");
  if (!f[7].empty()) ev.latency = parse_latency_flag(f[7]);
  if (!f[8].empty()) ev.account = parse_account_type(f[8]);
  return ev;
}

}  // namespace

std::vector<OrderEvent> read_event_log(std::istream& in, const std::string& source) {
  std::vector<OrderEvent> events;
  std::string line;
  std::size_t line_no = 0;

  auto strip = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };

  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, source + ": missing header");
  ++line_no;
  strip(line);
  if (line != kEventLogHeader) {
    throw Error(ErrorCode::kParse, source + ":1: bad header, expected '" + std::string(kEventLogHeader) + "'");
  }

  while (std::getline(in, line)) {
    ++line_no;
    strip(line);
    if (line.empty()) continue;
    try {
      events.push_back(parse_row(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, source + ":" + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return events;
}

std::vector<OrderEvent> read_event_log_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  return read_event_log(in, path);
}

void write_event_log(std::ostream& out, std::span<const OrderEvent> events) {
  out << kEventLogHeader << '\n';
  for (const auto& ev : events) {
    out << ev.timestamp_us << ',' << ev.order_id << ',' << to_string(ev.action) << ',' << to_string(ev.side)
        << ',' << to_string(ev.type) << ',';
    if (ev.price_units) out << format_price_units(*ev.price_units);
    out << ',' << ev.quantity << ',' << to_string(ev.latency) << ',' << to_string(ev.account) << '\n';
  }
}

std::optional<PriceGrid> infer_grid(std::span<const OrderEvent> events) {
  std::int64_t g = 0;
  for (const auto& ev : events) {
    if (ev.price_units && *ev.price_units != 0) g = std::gcd(g, *ev.price_units);
  }
  if (g == 0) return std::nullopt;
  return PriceGrid(g < 0 ? -g : g);
}

}  // namespace auction
