#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/manifest.hpp"

namespace auction::cli {

struct Common {
  std::optional<std::string> tick;  // tick size; inferred from the log prices when absent
  std::optional<std::string> ref;   // reference price for the last clearing tie-break
  std::string output;               // as given on the command line; empty means stdout
  std::string resolved_output;      // output after AUCTION_OUT_DIR resolution
  int threads = 1;
};

struct ReplayOptions {
  std::string log;
  std::optional<std::int64_t> until_us;
};

struct ImpactOptions {
  std::string log;
  std::string side = "both";
  std::string max_x = "200bp";
  std::optional<std::string> signed_path;
};

struct DensityOptions {
  std::vector<std::string> logs;
  double dx_bp = 1.0;
  std::string group = "none";
};

struct RegimeCliOptions {
  std::vector<std::string> logs;
  std::string side = "both";
  std::string max_x = "200bp";
  std::size_t min_points = 20;
  std::string scale = "linearized";
};

struct ResponseCliOptions {
  std::vector<std::string> logs;
  std::string warmup = "30s";
  bool with_cancels = false;
  std::string bins = "1e-5:1:30";
  bool virtual_impact = false;
};

struct SeriesCliOptions {
  std::string log;
  std::string interval = "5s";
  std::string max_x = "200bp";
  std::size_t min_points = 20;
};

struct MetricsOptions {
  std::vector<std::string> logs;
  std::string max_x = "200bp";
  std::size_t min_points = 20;
  std::size_t max_i = 10;
};

struct StatsOptions {
  std::string metrics;
  double threshold = 0.01;
  std::size_t max_i = 10;
  double omega_max_threshold = 0.5;
  std::optional<std::string> dist_dir;
};

struct GenOptions {
  std::string config;
  std::size_t days = 1;
  std::optional<std::uint64_t> seed;
};

// Each command writes its report to `out` and records what it read and the
// effective parameters in `m`. Library errors propagate as auction::Error.
void run_replay(const ReplayOptions& o, const Common& c, std::ostream& out, RunManifest& m);
void run_impact(const ImpactOptions& o, const Common& c, std::ostream& out, RunManifest& m);
void run_density(const DensityOptions& o, const Common& c, std::ostream& out, std::ostream& err, RunManifest& m);
void run_regime(const RegimeCliOptions& o, const Common& c, std::ostream& out, std::ostream& err, RunManifest& m);
void run_response(const ResponseCliOptions& o, const Common& c, std::ostream& out, std::ostream& err,
                  RunManifest& m);
void run_series(const SeriesCliOptions& o, const Common& c, std::ostream& out, RunManifest& m);
void run_metrics(const MetricsOptions& o, const Common& c, std::ostream& out, std::ostream& err, RunManifest& m);
void run_stats(const StatsOptions& o, const Common& c, std::ostream& out, RunManifest& m);
void run_gen(const GenOptions& o, const Common& c, std::ostream& err, RunManifest& m);

// Per-day metrics CSV shared by `metrics` (writer) and `stats` (reader).
inline constexpr const char* kMetricsHeader =
    "date,p_a,q_a,omega0_b,omega0_s,delta_bp_b,delta_bp_s,l_tilde_b,l_tilde_s,omega_max_b,omega_max_s,"
    "beta_emp_b,beta_emp_s,beta_theo_b,beta_theo_s,l_cash_b,l_cash_s,domega_b,domega_s";

}  // namespace auction::cli
