#include <string>

#include <json.hpp>

#include "auction/clearing.hpp"
#include "auction/error.hpp"
#include "auction/flowgen.hpp"

namespace auction {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_json(const ClearingResult& r, const PriceGrid& grid) {
  ordered_json j;
  j["p_a"] = json::parse(grid.format(r.price()));
  j["q_a"] = r.volume();
  j["imbalance"] = r.imbalance();
  j["vbm"] = r.matched(Side::kBuy);
  j["vbr"] = r.remaining(Side::kBuy);
  j["vsm"] = r.matched(Side::kSell);
  j["vsr"] = r.remaining(Side::kSell);
  j["vbu"] = r.unfilled_priority(Side::kBuy);
  j["vsu"] = r.unfilled_priority(Side::kSell);
  return j.dump();
}

namespace {

std::string_view to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::kConstant: return "constant";
    case ShapeKind::kSkewedBell: return "skewed_bell";
    case ShapeKind::kPiecewise: return "piecewise";
  }
  return "constant";
}

ShapeKind parse_shape_kind(const std::string& s) {
  if (s == "constant") return ShapeKind::kConstant;
  if (s == "skewed_bell") return ShapeKind::kSkewedBell;
  if (s == "piecewise") return ShapeKind::kPiecewise;
  throw Error(ErrorCode::kParse, "unknown shape kind '" + s + "' (expected constant, skewed_bell, piecewise)");
}

// Reads key into out when present; rejects keys outside `known`.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw Error(ErrorCode::kParse, where_ + ": expected a JSON object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.push_back(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where_ + "." + key + ": " + e.what());
    }
  }

  const json* sub(const char* key) {
    seen_.push_back(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (std::find(seen_.begin(), seen_.end(), k) == seen_.end()) {
        throw Error(ErrorCode::kParse, where_ + ": unknown key '" + k + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::vector<std::string> seen_;
};

ShapeConfig read_shape(const json& j, const std::string& where, ShapeConfig s) {
  Reader r(j, where);
  std::string kind(to_string(s.kind));
  r.get("kind", kind);
  s.kind = parse_shape_kind(kind);
  r.get("volume_per_tick", s.volume_per_tick);
  r.get("delta_star_bp", s.delta_star_bp);
  r.get("decay_per_bp", s.decay_per_bp);
  r.get("total_shares", s.total_shares);
  r.get("width_bp", s.width_bp);
  r.get("skew", s.skew);
  r.finish();
  return s;
}

ordered_json write_shape(const ShapeConfig& s) {
  ordered_json j;
  j["kind"] = to_string(s.kind);
  j["volume_per_tick"] = s.volume_per_tick;
  j["delta_star_bp"] = s.delta_star_bp;
  j["decay_per_bp"] = s.decay_per_bp;
  j["total_shares"] = s.total_shares;
  j["width_bp"] = s.width_bp;
  j["skew"] = s.skew;
  return j;
}

template <typename Enum, std::size_t N>
void read_weights(const json* j, const std::string& where, const Enum (&names)[N], std::array<double, N>& out) {
  if (j == nullptr) return;
  if (!j->is_object()) throw Error(ErrorCode::kParse, where + ": expected an object of weights");
  std::array<double, N> w{};
  for (const auto& [k, v] : j->items()) {
    std::size_t i = 0;
    while (i < N && auction::to_string(names[i]) != k) ++i;
    if (i == N) throw Error(ErrorCode::kParse, where + ": unknown category '" + k + "'");
    if (!v.is_number()) throw Error(ErrorCode::kParse, where + "." + k + ": expected a number");
    w[i] = v.template get<double>();
  }
  out = w;
}

template <typename Enum, std::size_t N>
ordered_json write_weights(const Enum (&names)[N], const std::array<double, N>& w) {
  ordered_json j;
  for (std::size_t i = 0; i < N; ++i) j[std::string(auction::to_string(names[i]))] = w[i];
  return j;
}

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

FlowConfig flow_config_from_json(const std::string& text) {
  const json j = parse_text(text, "flow config");
  FlowConfig c;
  Reader r(j, "config");
  r.get("seed", c.seed);
  r.get("tick_size", c.tick_size);
  r.get("fundamental_price", c.fundamental_price);
  r.get("start_us", c.start_us);
  r.get("earliest_clear_us", c.earliest_clear_us);
  r.get("latest_clear_us", c.latest_clear_us);
  r.get("half_width_bp", c.half_width_bp);
  if (const json* s = r.sub("shape")) c.upper = c.lower = read_shape(*s, "config.shape", c.upper);
  if (const json* s = r.sub("upper_shape")) c.upper = read_shape(*s, "config.upper_shape", c.upper);
  if (const json* s = r.sub("lower_shape")) c.lower = read_shape(*s, "config.lower_shape", c.lower);
  r.get("side_split_bp", c.side_split_bp);
  r.get("peak_mass", c.peak_mass);
  r.get("market_fraction", c.market_fraction);
  r.get("max_order_size", c.max_order_size);
  r.get("cancel_rate", c.cancel_rate);
  r.get("modify_rate", c.modify_rate);
  read_weights(r.sub("latency_weights"), "config.latency_weights", kAllLatencyFlags, c.latency_weights);
  read_weights(r.sub("account_weights"), "config.account_weights", kAllAccountTypes, c.account_weights);
  r.finish();
  return c;
}

std::string to_json(const FlowConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["tick_size"] = c.tick_size;
  j["fundamental_price"] = c.fundamental_price;
  j["start_us"] = c.start_us;
  j["earliest_clear_us"] = c.earliest_clear_us;
  j["latest_clear_us"] = c.latest_clear_us;
  j["half_width_bp"] = c.half_width_bp;
  j["upper_shape"] = write_shape(c.upper);
  j["lower_shape"] = write_shape(c.lower);
  j["side_split_bp"] = c.side_split_bp;
  j["peak_mass"] = c.peak_mass;
  j["market_fraction"] = c.market_fraction;
  j["max_order_size"] = c.max_order_size;
  j["cancel_rate"] = c.cancel_rate;
  j["modify_rate"] = c.modify_rate;
  j["latency_weights"] = write_weights(kAllLatencyFlags, c.latency_weights);
  j["account_weights"] = write_weights(kAllAccountTypes, c.account_weights);
  return j.dump(2);
}

std::string to_json(const GroundTruth& t) {
  ordered_json j;
  j["delta_star_bp"] = t.delta_star_bp ? json(*t.delta_star_bp) : json(nullptr);
  j["l_star"] = t.l_star ? json(*t.l_star) : json(nullptr);
  j["peak_mass"] = t.peak_mass;
  j["clear_time_us"] = t.clear_time_us;
  j["tick_size"] = t.tick_size;
  j["fundamental_price"] = t.fundamental_price;
  j["seed"] = t.seed;
  j["p_a"] = t.p_a ? json::parse(*t.p_a) : json(nullptr);
  j["q_a"] = t.q_a;
  return j.dump(2);
}

GroundTruth ground_truth_from_json(const std::string& text) {
  const json j = parse_text(text, "ground truth");
  GroundTruth t;
  try {
    if (!j.at("delta_star_bp").is_null()) t.delta_star_bp = j.at("delta_star_bp").get<double>();
    if (!j.at("l_star").is_null()) t.l_star = j.at("l_star").get<double>();
    t.peak_mass = j.at("peak_mass").get<double>();
    t.clear_time_us = j.at("clear_time_us").get<std::int64_t>();
    t.tick_size = j.value("tick_size", 0.0);
    t.fundamental_price = j.value("fundamental_price", 0.0);
    t.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("p_a") && !j.at("p_a").is_null()) t.p_a = j.at("p_a").dump();
    t.q_a = j.value("q_a", Shares{0});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("ground truth: ") + e.what());
  }
  return t;
}

}  // namespace auction
