#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "auction/clearing.hpp"
#include "auction/density.hpp"
#include "auction/error.hpp"
#include "auction/event_log.hpp"
#include "auction/flowgen.hpp"
#include "auction/impact.hpp"
#include "auction/indicative.hpp"
#include "auction/regime.hpp"
#include "auction/response.hpp"
#include "auction/stats.hpp"
#include "cli/format.hpp"

namespace auction::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Runs f(i) for i in [0, n) on up to `threads` workers. Results keep input
// order; the first failure by index is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, int threads, F f) {
  std::vector<std::optional<T>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_workers = static_cast<std::size_t>(std::clamp<long>(threads, 1, static_cast<long>(std::max<std::size_t>(n, 1))));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n_workers; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

struct Day {
  std::string path;
  std::string date;
  PriceGrid grid{1};
  std::vector<OrderEvent> events;
  std::optional<Tick> ref;
};

Day load_day(const std::string& path, const Common& c) {
  Day d;
  d.path = path;
  d.date = fs::path(path).stem().string();
  d.events = read_event_log_file(path);
  for (std::size_t i = 1; i < d.events.size(); ++i) {
    if (d.events[i].timestamp_us < d.events[i - 1].timestamp_us) {
      throw Error(ErrorCode::kParse, path + ": events are not time-sorted (row " + std::to_string(i + 1) + ")");
    }
  }
  if (c.tick) {
    d.grid = PriceGrid(parse_price_units(*c.tick));
  } else if (auto g = infer_grid(d.events)) {
    d.grid = *g;
  } else {
    throw Error(ErrorCode::kInvalidArgument, path + ": no prices to infer the tick from; pass --tick");
  }
  if (c.ref) d.ref = d.grid.parse(*c.ref);
  return d;
}

void record_common(const Common& c, RunManifest& m) {
  m.parameters.emplace_back("tick", c.tick.value_or("inferred"));
  m.parameters.emplace_back("ref", c.ref.value_or("none"));
}

std::vector<Side> parse_sides(const std::string& s) {
  if (s == "B") return {Side::kBuy};
  if (s == "S") return {Side::kSell};
  if (s == "both") return {Side::kBuy, Side::kSell};
  throw Error(ErrorCode::kInvalidArgument, "unknown side '" + s + "' (expected B, S, both)");
}

json price_json(const PriceGrid& g, Tick t) { return json::parse(g.format(t)); }

bool is_no_cross(const Error& e) { return e.code() == ErrorCode::kNoCross; }

// Clears the final book of a day; nullopt (with a note) when it does not cross.
std::optional<std::pair<AuctionBook, ClearingResult>> clear_day(const Day& d, std::ostream* err) {
  AuctionBook book = replay(d.grid, d.events);
  try {
    ClearingResult r = clear(book, d.ref);
    return std::make_pair(std::move(book), r);
  } catch (const Error& e) {
    if (!is_no_cross(e)) throw;
    if (err) *err << "note: " << d.path << ": no cross, day skipped\n";
    return std::nullopt;
  }
}

std::string side_label(Side s) { return std::string(to_string(s)); }

}  // namespace

void run_replay(const ReplayOptions& o, const Common& c, std::ostream& out, RunManifest& m) {
  m.inputs = {o.log};
  record_common(c, m);
  m.parameters.emplace_back("until_us", o.until_us ? std::to_string(*o.until_us) : "end");
  const Day d = load_day(o.log, c);
  const AuctionBook book = replay(d.grid, d.events, o.until_us);
  const ClearingResult r = clear(book, d.ref);

  ordered_json j;
  j["clearing"] = ordered_json::parse(to_json(r, d.grid));
  ordered_json levels = ordered_json::array();
  for (const auto& [tick, l] : book.levels()) {
    ordered_json row;
    row["price"] = price_json(d.grid, tick);
    row["buy"] = l.buy;
    row["sell"] = l.sell;
    levels.push_back(row);
  }
  ordered_json b;
  b["tick_size"] = json::parse(format_price_units(d.grid.tick_units()));
  b["levels"] = levels;
  b["buy_market"] = book.market_total(Side::kBuy);
  b["sell_market"] = book.market_total(Side::kSell);
  j["book"] = b;
  out << j.dump(2) << '\n';
}

void run_impact(const ImpactOptions& o, const Common& c, std::ostream& out, RunManifest& m) {
  m.inputs = {o.log};
  record_common(c, m);
  const double max_x = parse_log_distance(o.max_x);
  m.parameters.emplace_back("side", o.side);
  m.parameters.emplace_back("max_x", fmt(max_x));
  const Day d = load_day(o.log, c);
  const Depth depth = replay(d.grid, d.events).depth();
  const ClearingResult r = clear(depth, d.ref);

  std::ostringstream signed_csv;
  signed_csv << "side,omega,impact\n";
  out << "side,i,omega_num,omega_den,price,impact_log\n";
  for (Side s : parse_sides(o.side)) {
    const ImpactCurve curve = impact_curve(depth, r, s, max_x);
    const int eps = sign(s);
    signed_csv << side_label(s) << ",0,0\n";
    for (std::size_t i = 0; i < curve.breakpoints.size(); ++i) {
      const auto& b = curve.breakpoints[i];
      out << side_label(s) << ',' << i << ',' << b.omega.num << ',' << b.omega.den << ',' << d.grid.format(b.price)
          << ',' << fmt(b.impact) << '\n';
      signed_csv << side_label(s) << ',' << fmt(eps * b.omega.value()) << ',' << fmt(eps * b.impact) << '\n';
    }
  }

  std::optional<std::string> signed_path = o.signed_path;
  if (!signed_path && !c.resolved_output.empty()) {
    fs::path p(c.resolved_output);
    signed_path = (p.parent_path() / (p.stem().string() + ".signed.csv")).string();
  }
  if (signed_path) {
    std::ofstream f(*signed_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + *signed_path);
    f << signed_csv.str();
    m.parameters.emplace_back("signed_output", *signed_path);
  }
}

void run_density(const DensityOptions& o, const Common& c, std::ostream& out, std::ostream& err, RunManifest& m) {
  m.inputs = o.logs;
  record_common(c, m);
  if (!(o.dx_bp > 0)) throw Error(ErrorCode::kInvalidArgument, "--dx must be positive");
  Grouping grouping = Grouping::kNone;
  if (o.group == "latency") {
    grouping = Grouping::kLatency;
  } else if (o.group == "account") {
    grouping = Grouping::kAccount;
  } else if (o.group != "none") {
    throw Error(ErrorCode::kInvalidArgument, "unknown group '" + o.group + "' (expected none, latency, account)");
  }
  m.parameters.emplace_back("dx_bp", fmt(o.dx_bp));
  m.parameters.emplace_back("group", o.group);
  const double dx = o.dx_bp * kBasisPoint;

  auto per_day = parallel_map<std::vector<DensityProfile>>(o.logs.size(), c.threads, [&](std::size_t i) {
    const Day d = load_day(o.logs[i], c);
    auto cleared = clear_day(d, nullptr);
    if (!cleared) return std::vector<DensityProfile>{};
    return day_profiles(cleared->first, cleared->second, dx, grouping);
  });
  std::vector<DensityProfile> all;
  for (std::size_t i = 0; i < per_day.size(); ++i) {
    if (per_day[i].empty()) err << "note: " << o.logs[i] << ": no cross, day skipped\n";
    all.insert(all.end(), per_day[i].begin(), per_day[i].end());
  }
  if (all.empty()) throw Error(ErrorCode::kNoCross, "no input day crosses");

  out << "x_bp,rho_buy,rho_sell,n_days" << (grouping == Grouping::kNone ? "" : ",group") << '\n';
  for (const auto& prof : average_by_group(all)) {
    for (const auto& [k, bin] : prof.bins) {
      out << fmt(static_cast<double>(k) * o.dx_bp) << ',' << fmt(bin.rho_buy) << ',' << fmt(bin.rho_sell) << ','
          << bin.n_days;
      if (grouping != Grouping::kNone) out << ',' << prof.group.value_or("");
      out << '\n';
    }
  }
}

namespace {

ImpactScale parse_scale(const std::string& s) {
  if (s == "linearized") return ImpactScale::kLinearized;
  if (s == "log") return ImpactScale::kLog;
  throw Error(ErrorCode::kInvalidArgument, "unknown scale '" + s + "' (expected linearized, log)");
}

std::optional<RegimeFit> try_fit(const Depth& depth, const ClearingResult& r, Side s, const RegimeOptions& opts,
                                 std::string* why) {
  try {
    return fit_regime(depth, r, s, opts);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kTooFewPoints:
      case ErrorCode::kEmptySide:
      case ErrorCode::kZeroLiquidity:
        if (why) *why = e.what();
        return std::nullopt;
      default:
        throw;
    }
  }
}

}  // namespace

void run_regime(const RegimeCliOptions& o, const Common& c, std::ostream& out, std::ostream& err, RunManifest& m) {
  m.inputs = o.logs;
  record_common(c, m);
  RegimeOptions opts;
  opts.max_x = parse_log_distance(o.max_x);
  opts.min_points = o.min_points;
  opts.scale = parse_scale(o.scale);
  const auto sides = parse_sides(o.side);
  m.parameters.emplace_back("side", o.side);
  m.parameters.emplace_back("max_x", fmt(opts.max_x));
  m.parameters.emplace_back("min_points", std::to_string(opts.min_points));
  m.parameters.emplace_back("scale", o.scale);

  struct Result {
    std::string rows;
    std::string notes;
    std::size_t accepted = 0;
  };
  auto results = parallel_map<Result>(o.logs.size(), c.threads, [&](std::size_t i) {
    Result res;
    const Day d = load_day(o.logs[i], c);
    std::ostringstream notes;
    auto cleared = clear_day(d, &notes);
    if (cleared) {
      const Depth depth = cleared->first.depth();
      std::ostringstream rows;
      for (Side s : sides) {
        std::string why;
        auto fit = try_fit(depth, cleared->second, s, opts, &why);
        if (!fit) {
          notes << "note: " << d.path << " side " << side_label(s) << ": fit rejected (" << why << ")\n";
          continue;
        }
        ++res.accepted;
        rows << d.date << ',' << side_label(s) << ',' << fmt(fit->delta / kBasisPoint) << ',' << fmt(fit->l_tilde)
             << ',' << fmt(fit->omega_max.value()) << ',' << fmt(fit->beta_emp) << ',' << fmt(fit->beta_theo) << ','
             << fit->n_points << '\n';
      }
      res.rows = rows.str();
    }
    res.notes = notes.str();
    return res;
  });

  std::size_t accepted = 0;
  out << "date,side,delta_bp,l_tilde,omega_max,beta_emp,beta_theo,n_points\n";
  for (const auto& r : results) {
    out << r.rows;
    err << r.notes;
    accepted += r.accepted;
  }
  if (accepted == 0) throw Error(ErrorCode::kTooFewPoints, "no fit accepted");
}

namespace {

LogBins parse_bins(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw Error(ErrorCode::kInvalidArgument, "bins must look like lo:hi:count, got " + spec);
  LogBins b;
  b.lo = parse_double(parts[0], "bin lower edge");
  b.hi = parse_double(parts[1], "bin upper edge");
  const double n = parse_double(parts[2], "bin count");
  if (n < 1 || n != std::floor(n)) throw Error(ErrorCode::kInvalidArgument, "bin count must be a positive integer");
  b.count = static_cast<std::size_t>(n);
  if (!(b.lo > 0) || !(b.hi > b.lo)) throw Error(ErrorCode::kInvalidArgument, "bins need 0 < lo < hi");
  return b;
}

}  // namespace

void run_response(const ResponseCliOptions& o, const Common& c, std::ostream& out, std::ostream& err,
                  RunManifest& m) {
  m.inputs = o.logs;
  record_common(c, m);
  ResponseOptions opts;
  opts.warmup_us = parse_duration_us(o.warmup);
  opts.bins = parse_bins(o.bins);
  opts.with_cancels = o.with_cancels;
  opts.virtual_impact = o.virtual_impact;
  m.parameters.emplace_back("warmup_us", std::to_string(opts.warmup_us));
  m.parameters.emplace_back("bins", o.bins);
  m.parameters.emplace_back("with_cancels", o.with_cancels ? "true" : "false");
  m.parameters.emplace_back("virtual", o.virtual_impact ? "true" : "false");

  auto per_day = parallel_map<ResponseResult>(o.logs.size(), c.threads, [&](std::size_t i) {
    const Day d = load_day(o.logs[i], c);
    ResponseOptions day_opts = opts;
    day_opts.reference = d.ref;
    return response_curves(d.grid, d.events, day_opts);
  });
  std::vector<MarketableEvent> pooled;
  std::size_t no_cross = 0;
  for (const auto& r : per_day) {
    pooled.insert(pooled.end(), r.events.begin(), r.events.end());
    no_cross += r.skipped_no_cross;
  }
  std::size_t outside = 0;
  const auto bins = bin_response(pooled, opts.bins, &outside);
  if (no_cross > 0) err << "note: " << no_cross << " events skipped while the book did not cross\n";
  if (outside > 0) err << "note: " << outside << " events outside the bin range\n";

  out << "bin_lo,bin_hi,r1,rm,count,r1_se,rm_se,diff_se";
  if (o.virtual_impact) out << ",rv,rv_se";
  out << '\n';
  for (const auto& b : bins) {
    out << fmt(b.lo) << ',' << fmt(b.hi) << ',' << fmt(b.r1) << ',' << fmt(b.rm) << ',' << b.count << ','
        << fmt(b.r1_se) << ',' << fmt(b.rm_se) << ',' << fmt(b.diff_se);
    if (o.virtual_impact) out << ',' << fmt(b.rv) << ',' << fmt(b.rv_se);
    out << '\n';
  }
}

void run_series(const SeriesCliOptions& o, const Common& c, std::ostream& out, RunManifest& m) {
  m.inputs = {o.log};
  record_common(c, m);
  SeriesOptions sopts;
  sopts.interval_us = parse_duration_us(o.interval);
  if (sopts.interval_us <= 0) throw Error(ErrorCode::kInvalidArgument, "interval must be positive");
  RegimeOptions ropts;
  ropts.max_x = parse_log_distance(o.max_x);
  ropts.min_points = o.min_points;
  m.parameters.emplace_back("interval_us", std::to_string(sopts.interval_us));
  m.parameters.emplace_back("max_x", fmt(ropts.max_x));
  m.parameters.emplace_back("min_points", std::to_string(ropts.min_points));

  const Day d = load_day(o.log, c);
  const auto times = snapshot_times(d.events, sopts);
  out << "t_us,p_ind,q_ind,liquidity_b,liquidity_s,qmax_b,qmax_s\n";
  for_each_snapshot(d.grid, d.events, times, [&](std::int64_t t, const AuctionBook& book) {
    out << t << ',';
    std::optional<ClearingResult> r;
    try {
      r = clear(book, d.ref);
    } catch (const Error& e) {
      if (!is_no_cross(e)) throw;
    }
    if (!r) {
      out << ",,,,,\n";
      return;
    }
    out << d.grid.format(r->price()) << ',' << r->volume();
    const Depth depth = book.depth();
    std::optional<RegimeFit> fits[2];
    for (Side s : {Side::kBuy, Side::kSell}) fits[side_index(s)] = try_fit(depth, *r, s, ropts, nullptr);
    const double q = static_cast<double>(r->volume());
    for (const auto& f : fits) out << ',' << (f ? fmt(f->l_tilde * q) : "");
    for (const auto& f : fits) out << ',' << (f ? fmt(f->omega_max.value() * q) : "");
    out << '\n';
  });
}

void run_metrics(const MetricsOptions& o, const Common& c, std::ostream& out, std::ostream& err, RunManifest& m) {
  m.inputs = o.logs;
  record_common(c, m);
  RegimeOptions ropts;
  ropts.max_x = parse_log_distance(o.max_x);
  ropts.min_points = o.min_points;
  m.parameters.emplace_back("max_x", fmt(ropts.max_x));
  m.parameters.emplace_back("min_points", std::to_string(ropts.min_points));
  m.parameters.emplace_back("max_i", std::to_string(o.max_i));

  auto rows = parallel_map<std::optional<std::string>>(o.logs.size(), c.threads, [&](std::size_t i) {
    const Day d = load_day(o.logs[i], c);
    auto cleared = clear_day(d, nullptr);
    if (!cleared) return std::optional<std::string>{};
    const auto& [book, r] = *cleared;
    const Depth depth = book.depth();
    DayMetrics dm;
    dm.date = d.date;
    dm.p_a = d.grid.value(r.price());
    dm.q_a = static_cast<double>(r.volume());
    for (Side s : {Side::kBuy, Side::kSell}) {
      const auto k = side_index(s);
      const ImpactCurve curve = impact_curve(depth, r, s, ropts.max_x);
      dm.omega0[k] = curve.omega0.value();
      dm.domega[k].push_back(curve.omega0.value());
      for (std::size_t j = 1; j < curve.breakpoints.size() && j <= o.max_i; ++j) {
        const Ratio& a = curve.breakpoints[j - 1].omega;
        const Ratio& b = curve.breakpoints[j].omega;
        dm.domega[k].push_back(static_cast<double>(b.num - a.num) / static_cast<double>(b.den));
      }
      if (auto f = try_fit(depth, r, s, ropts, nullptr)) {
        dm.delta[k] = f->delta;
        dm.l_tilde[k] = f->l_tilde;
        dm.omega_max[k] = f->omega_max.value();
        dm.beta_emp[k] = f->beta_emp;
        dm.beta_theo[k] = f->beta_theo;
      }
    }
    auto bp = [](const std::optional<double>& v) { return v ? fmt(*v / kBasisPoint) : std::string(); };
    auto list = [](const std::vector<double>& v) {
      std::vector<std::string> parts;
      for (double x : v) parts.push_back(fmt(x));
      return join(parts, ";");
    };
    std::ostringstream row;
    row << dm.date << ',' << d.grid.format(r.price()) << ',' << r.volume() << ',' << fmt(dm.omega0[0]) << ','
        << fmt(dm.omega0[1]) << ',' << bp(dm.delta[0]) << ',' << bp(dm.delta[1]) << ',' << fmt(dm.l_tilde[0]) << ','
        << fmt(dm.l_tilde[1]) << ',' << fmt(dm.omega_max[0]) << ',' << fmt(dm.omega_max[1]) << ','
        << fmt(dm.beta_emp[0]) << ',' << fmt(dm.beta_emp[1]) << ',' << fmt(dm.beta_theo[0]) << ','
        << fmt(dm.beta_theo[1]) << ',' << fmt(dm.l_cash(Side::kBuy)) << ',' << fmt(dm.l_cash(Side::kSell)) << ','
        << list(dm.domega[0]) << ',' << list(dm.domega[1]) << '\n';
    return std::optional<std::string>(row.str());
  });
  out << kMetricsHeader << '\n';
  std::size_t n = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i]) {
      err << "note: " << o.logs[i] << ": no cross, day skipped\n";
      continue;
    }
    out << *rows[i];
    ++n;
  }
  if (n == 0) throw Error(ErrorCode::kNoCross, "no input day crosses");
}

namespace {

std::vector<DayMetrics> read_metrics(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, path + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::kParse, path + ": missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_date = col("date"), c_pa = col("p_a"), c_qa = col("q_a");
  const std::size_t c_w0[2] = {col("omega0_b"), col("omega0_s")};
  const std::size_t c_delta[2] = {col("delta_bp_b"), col("delta_bp_s")};
  const std::size_t c_l[2] = {col("l_tilde_b"), col("l_tilde_s")};
  const std::size_t c_wmax[2] = {col("omega_max_b"), col("omega_max_s")};
  const std::size_t c_be[2] = {col("beta_emp_b"), col("beta_emp_s")};
  const std::size_t c_bt[2] = {col("beta_theo_b"), col("beta_theo_s")};
  const std::size_t c_dw[2] = {col("domega_b"), col("domega_s")};

  std::vector<DayMetrics> days;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    const std::string where = path + ":" + std::to_string(line_no);
    if (f.size() != header.size()) throw Error(ErrorCode::kParse, where + ": wrong number of fields");
    auto num = [&](std::size_t i) {
      try {
        return parse_double(f[i], header[i]);
      } catch (const Error& e) {
        throw Error(ErrorCode::kParse, where + ": " + e.detail());
      }
    };
    auto opt = [&](std::size_t i) { return f[i].empty() ? std::optional<double>{} : std::optional<double>(num(i)); };
    DayMetrics d;
    d.date = f[c_date];
    d.p_a = num(c_pa);
    d.q_a = num(c_qa);
    for (std::size_t k = 0; k < 2; ++k) {
      d.omega0[k] = num(c_w0[k]);
      if (auto v = opt(c_delta[k])) d.delta[k] = *v * kBasisPoint;
      d.l_tilde[k] = opt(c_l[k]);
      d.omega_max[k] = opt(c_wmax[k]);
      d.beta_emp[k] = opt(c_be[k]);
      d.beta_theo[k] = opt(c_bt[k]);
      if (!f[c_dw[k]].empty()) {
        for (const auto& part : split(f[c_dw[k]], ';')) d.domega[k].push_back(parse_double(part, "domega"));
      }
    }
    days.push_back(std::move(d));
  }
  return days;
}

ordered_json spearman_json(const std::string& xn, const std::string& yn, const std::vector<double>& x,
                           const std::vector<double>& y) {
  ordered_json j;
  j["x"] = xn;
  j["y"] = yn;
  j["n"] = x.size();
  try {
    const auto r = spearman(x, y);
    j["rho"] = r.rho;
    j["p_value"] = r.p_value;
    j["stars"] = std::string(r.stars);
  } catch (const Error& e) {
    j["error"] = std::string(to_string(e.code()));
  }
  return j;
}

ordered_json ks_json(const std::string& xn, const std::string& yn, const std::vector<double>& x,
                     const std::vector<double>& y, Alternative alt) {
  ordered_json j;
  j["x"] = xn;
  j["y"] = yn;
  j["n_x"] = x.size();
  j["n_y"] = y.size();
  j["alternative"] = alt == Alternative::kTwoSided ? "two-sided" : (alt == Alternative::kGreater ? "greater" : "less");
  try {
    const auto r = ks_two_sample(x, y, alt);
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    j["stars"] = std::string(significance_stars(r.p_value));
  } catch (const Error& e) {
    j["error"] = std::string(to_string(e.code()));
  }
  return j;
}

// Pairs where both values exist.
void paired(const std::vector<DayMetrics>& days, const std::array<std::optional<double>, 2> DayMetrics::*field,
            std::vector<double>& x, std::vector<double>& y) {
  for (const auto& d : days) {
    const auto& v = d.*field;
    if (v[0] && v[1]) {
      x.push_back(*v[0]);
      y.push_back(*v[1]);
    }
  }
}

void write_distribution(const fs::path& dir, const std::string& name, const std::vector<double>& values) {
  if (values.size() < 2) return;
  {
    std::ofstream f(dir / ("rcdf_" + name + ".csv"), std::ios::binary);
    f << "value,rcdf\n";
    for (const auto& row : rcdf_table(values)) f << fmt(row.value) << ',' << fmt(row.fraction) << '\n';
  }
  try {
    const auto kde = kernel_density(values);
    std::ofstream f(dir / ("kde_" + name + ".csv"), std::ios::binary);
    f << "x,density\n";
    for (std::size_t i = 0; i < kde.x.size(); ++i) f << fmt(kde.x[i]) << ',' << fmt(kde.density[i]) << '\n';
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateSample) throw;
  }
}

}  // namespace

void run_stats(const StatsOptions& o, const Common& c, std::ostream& out, RunManifest& m) {
  (void)c;
  m.inputs = {o.metrics};
  m.parameters.emplace_back("threshold", fmt(o.threshold));
  m.parameters.emplace_back("max_i", std::to_string(o.max_i));
  m.parameters.emplace_back("omega_max_threshold", fmt(o.omega_max_threshold));
  if (o.dist_dir) m.parameters.emplace_back("dist_dir", *o.dist_dir);
  const auto days = read_metrics(o.metrics);
  if (days.empty()) throw Error(ErrorCode::kEmptyBatch, o.metrics + ": no rows");

  ordered_json j;
  j["n_days"] = days.size();

  std::vector<double> w0b, w0s;
  for (const auto& d : days) {
    w0b.push_back(d.omega0[0]);
    w0s.push_back(d.omega0[1]);
  }
  ordered_json zero;
  zero["threshold"] = o.threshold;
  zero["probability"] = zero_impact_probability(days, o.threshold);
  j["zero_impact"] = zero;

  ordered_json sp = ordered_json::array();
  sp.push_back(spearman_json("omega0_b", "omega0_s", w0b, w0s));
  {
    std::vector<double> x, y;
    paired(days, &DayMetrics::l_tilde, x, y);
    sp.push_back(spearman_json("l_tilde_b", "l_tilde_s", x, y));
  }
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<double> x, y;
    for (const auto& d : days) {
      if (d.beta_emp[k] && d.beta_theo[k]) {
        x.push_back(*d.beta_emp[k]);
        y.push_back(*d.beta_theo[k]);
      }
    }
    const std::string sfx = k == 0 ? "_b" : "_s";
    sp.push_back(spearman_json("beta_emp" + sfx, "beta_theo" + sfx, x, y));
  }
  j["spearman"] = sp;

  ordered_json ks = ordered_json::array();
  ks.push_back(ks_json("omega0_b", "omega0_s", w0b, w0s, Alternative::kTwoSided));
  j["ks"] = ks;

  ordered_json dks = ordered_json::array();
  for (std::size_t k = 0; k < 2; ++k) {
    const std::string sfx = k == 0 ? "_b" : "_s";
    for (std::size_t a = 0; a <= o.max_i; ++a) {
      for (std::size_t b = a + 1; b <= o.max_i; ++b) {
        std::vector<double> x, y;
        for (const auto& d : days) {
          if (d.domega[k].size() > a) x.push_back(d.domega[k][a]);
          if (d.domega[k].size() > b) y.push_back(d.domega[k][b]);
        }
        if (x.empty() || y.empty()) continue;
        dks.push_back(ks_json("domega" + std::to_string(a) + sfx, "domega" + std::to_string(b) + sfx, x, y,
                              Alternative::kTwoSided));
      }
    }
  }
  j["domega_ks"] = dks;

  ordered_json wmax;
  wmax["threshold"] = o.omega_max_threshold;
  try {
    wmax["probability"] = omega_max_exceedance(days, o.omega_max_threshold);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyBatch) throw;
    wmax["probability"] = nullptr;
  }
  j["omega_max_exceedance"] = wmax;

  if (o.dist_dir) {
    const fs::path dir(*o.dist_dir);
    fs::create_directories(dir);
    auto collect = [&](auto getter) {
      std::vector<double> v;
      for (const auto& d : days) {
        if (auto x = getter(d)) v.push_back(*x);
      }
      return v;
    };
    for (std::size_t k = 0; k < 2; ++k) {
      const std::string sfx = k == 0 ? "_b" : "_s";
      write_distribution(dir, "omega0" + sfx, collect([k](const DayMetrics& d) { return std::optional(d.omega0[k]); }));
      write_distribution(dir, "delta" + sfx, collect([k](const DayMetrics& d) { return d.delta[k]; }));
      write_distribution(dir, "omega_max" + sfx, collect([k](const DayMetrics& d) { return d.omega_max[k]; }));
      write_distribution(dir, "l_cash" + sfx,
                         collect([k](const DayMetrics& d) { return d.l_cash(k == 0 ? Side::kBuy : Side::kSell); }));
    }
  }
  out << j.dump(2) << '\n';
}

void run_gen(const GenOptions& o, const Common& c, std::ostream& err, RunManifest& m) {
  if (c.resolved_output.empty()) throw Error(ErrorCode::kInvalidArgument, "gen needs -o DIR");
  if (o.days < 1) throw Error(ErrorCode::kInvalidArgument, "--days must be >= 1");
  m.inputs = {o.config};
  std::ifstream in(o.config, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + o.config);
  std::stringstream buf;
  buf << in.rdbuf();
  FlowConfig cfg = flow_config_from_json(buf.str());
  if (o.seed) cfg.seed = *o.seed;
  m.seed = cfg.seed;
  m.parameters.emplace_back("days", std::to_string(o.days));

  const fs::path dir(c.resolved_output);
  fs::create_directories(dir);
  parallel_map<int>(o.days, c.threads, [&](std::size_t day) {
    FlowConfig dc = cfg;
    dc.seed = cfg.seed + day;
    const GeneratedFlow flow = generate(dc);
    char name[32];
    std::snprintf(name, sizeof name, "day_%03zu", day);
    std::ofstream log(dir / (std::string(name) + ".csv"), std::ios::binary);
    write_event_log(log, flow.events);
    std::ofstream truth(dir / (std::string(name) + ".truth.json"), std::ios::binary);
    truth << to_json(flow.truth) << '\n';
    if (!log || !truth) throw Error(ErrorCode::kInvalidArgument, "cannot write into " + dir.string());
    return 0;
  });
  err << "wrote " << o.days << " day(s) to " << dir.string() << '\n';
}

}  // namespace auction::cli
