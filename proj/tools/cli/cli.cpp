#include "cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "auction/error.hpp"
#include "cli/commands.hpp"
#include "cli/manifest.hpp"

namespace auction::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnknownOrderId:
    case ErrorCode::kDuplicateOrderId:
    case ErrorCode::kOffGridPrice:
    case ErrorCode::kNonPositiveQuantity:
    case ErrorCode::kMissingPrice:
    case ErrorCode::kSideMismatch:
    case ErrorCode::kMismatchedBinning:
    case ErrorCode::kInfeasibleConfig:
      return kExitParse;
    case ErrorCode::kNoCross:
      return kExitNoCross;
    case ErrorCode::kTooFewPoints:
      return kExitTooFewPoints;
    default:
      return kExitFailure;
  }
}

std::string resolve_output(const std::string& output) {
  if (output.empty() || output == "-") return {};
  const fs::path p(output);
  const char* dir = std::getenv("AUCTION_OUT_DIR");
  if (p.is_relative() && dir != nullptr && *dir != '\0') return (fs::path(dir) / p).string();
  return output;
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << content;
  f.close();
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
}

// Replaces (or adds) the output option in a recorded command line.
std::vector<std::string> with_output(const std::vector<std::string>& args, const std::string& output) {
  std::vector<std::string> out;
  bool replaced = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if ((a == "-o" || a == "--output") && i + 1 < args.size()) {
      out.push_back(a);
      out.push_back(output);
      ++i;
      replaced = true;
    } else if (a.rfind("--output=", 0) == 0) {
      out.push_back("--output=" + output);
      replaced = true;
    } else if (a.size() > 2 && a.rfind("-o", 0) == 0 && a[2] != '-') {
      out.push_back("-o" + output);
      replaced = true;
    } else {
      out.push_back(a);
    }
  }
  if (!replaced) {
    out.push_back("-o");
    out.push_back(output);
  }
  return out;
}

struct Invocation {
  std::string command;
  Common common;
  // Runs the command, writing its report to `report`.
  std::function<void(std::ostream& report, std::ostream& err, RunManifest& m)> run;
  bool output_is_directory = false;
};

void add_output(CLI::App* sub, Common& c) {
  sub->add_option("-o,--output", c.output, "Output file (default stdout; relative paths go under $AUCTION_OUT_DIR)");
  sub->add_option("--threads", c.threads, "Worker threads for multi-file input")->check(CLI::PositiveNumber);
}

void add_book_options(CLI::App* sub, Common& c) {
  add_output(sub, c);
  sub->add_option("--tick", c.tick, "Tick size (default: inferred from the log prices)");
  sub->add_option("--ref", c.ref, "Reference price for the last clearing tie-break");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Call-auction price impact analysis", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Invocation inv;
  Common& c = inv.common;

  ReplayOptions replay_o;
  auto* replay = app.add_subcommand("replay", "Replay a log and clear the final book (JSON)");
  replay->add_option("log", replay_o.log, "Order log CSV")->required();
  replay->add_option("--until", replay_o.until_us, "Replay only events with timestamp_us <= this");
  add_book_options(replay, c);
  replay->callback([&] {
    inv.command = "replay";
    inv.run = [&](std::ostream& o, std::ostream&, RunManifest& m) { run_replay(replay_o, c, o, m); };
  });

  ImpactOptions impact_o;
  auto* impact = app.add_subcommand("impact", "Step impact curves of the final book (CSV)");
  impact->add_option("log", impact_o.log, "Order log CSV")->required();
  impact->add_option("--side", impact_o.side, "B, S or both")->check(CLI::IsMember({"B", "S", "both"}));
  impact->add_option("--max-x", impact_o.max_x, "Truncation in log-price (200bp, 2%, 0.02x; bare = bp)");
  impact->add_option("--signed", impact_o.signed_path, "Signed curve CSV (default <output stem>.signed.csv)");
  add_book_options(impact, c);
  impact->callback([&] {
    inv.command = "impact";
    inv.run = [&](std::ostream& o, std::ostream&, RunManifest& m) { run_impact(impact_o, c, o, m); };
  });

  DensityOptions density_o;
  auto* density = app.add_subcommand("density", "Average scaled density profile over days (CSV)");
  density->add_option("logs", density_o.logs, "Order log CSVs, one per day")->required();
  density->add_option("--dx", density_o.dx_bp, "Bin width in basis points");
  density->add_option("--group", density_o.group, "none, latency or account")
      ->check(CLI::IsMember({"none", "latency", "account"}));
  add_book_options(density, c);
  density->callback([&] {
    inv.command = "density";
    inv.run = [&](std::ostream& o, std::ostream& e, RunManifest& m) { run_density(density_o, c, o, e, m); };
  });

  RegimeCliOptions regime_o;
  auto* regime = app.add_subcommand("regime", "Constant-density window and slopes per day and side (CSV)");
  regime->add_option("logs", regime_o.logs, "Order log CSVs")->required();
  regime->add_option("--side", regime_o.side, "B, S or both")->check(CLI::IsMember({"B", "S", "both"}));
  regime->add_option("--max-x", regime_o.max_x, "Scan range in log-price (200bp, 2%, 0.02x; bare = bp)");
  regime->add_option("--min-points", regime_o.min_points, "Minimum samples in the constant window");
  regime->add_option("--scale", regime_o.scale, "Slope regression scale: linearized or log")
      ->check(CLI::IsMember({"linearized", "log"}));
  add_book_options(regime, c);
  regime->callback([&] {
    inv.command = "regime";
    inv.run = [&](std::ostream& o, std::ostream& e, RunManifest& m) { run_regime(regime_o, c, o, e, m); };
  });

  ResponseCliOptions response_o;
  auto* response = app.add_subcommand("response", "Binned price response to marketable events (CSV)");
  response->add_option("logs", response_o.logs, "Order log CSVs")->required();
  response->add_option("--warmup", response_o.warmup, "Events before first + warmup only build the book");
  response->add_flag("--with-cancels", response_o.with_cancels, "Include cancellations of marketable orders");
  response->add_option("--bins", response_o.bins, "Log-spaced omega bins lo:hi:count");
  response->add_flag("--virtual", response_o.virtual_impact, "Add the virtual impact of each event");
  add_book_options(response, c);
  response->callback([&] {
    inv.command = "response";
    inv.run = [&](std::ostream& o, std::ostream& e, RunManifest& m) { run_response(response_o, c, o, e, m); };
  });

  SeriesCliOptions series_o;
  auto* series = app.add_subcommand("series", "Indicative price, liquidity and Q_max snapshots (CSV)");
  series->add_option("log", series_o.log, "Order log CSV")->required();
  series->add_option("--interval", series_o.interval, "Snapshot spacing");
  series->add_option("--max-x", series_o.max_x, "Scan range in log-price");
  series->add_option("--min-points", series_o.min_points, "Minimum samples in the constant window");
  add_book_options(series, c);
  series->callback([&] {
    inv.command = "series";
    inv.run = [&](std::ostream& o, std::ostream&, RunManifest& m) { run_series(series_o, c, o, m); };
  });

  MetricsOptions metrics_o;
  auto* metrics = app.add_subcommand("metrics", "Per-day summary metrics feeding stats (CSV)");
  metrics->add_option("logs", metrics_o.logs, "Order log CSVs, one per day")->required();
  metrics->add_option("--max-x", metrics_o.max_x, "Scan range in log-price");
  metrics->add_option("--min-points", metrics_o.min_points, "Minimum samples in the constant window");
  metrics->add_option("--max-i", metrics_o.max_i, "Breakpoint increments to keep per side");
  add_book_options(metrics, c);
  metrics->callback([&] {
    inv.command = "metrics";
    inv.run = [&](std::ostream& o, std::ostream& e, RunManifest& m) { run_metrics(metrics_o, c, o, e, m); };
  });

  StatsOptions stats_o;
  auto* stats = app.add_subcommand("stats", "Correlation, KS and threshold report from a metrics CSV (JSON)");
  stats->add_option("metrics", stats_o.metrics, "Output of the metrics command")->required();
  stats->add_option("--threshold", stats_o.threshold, "Scaled size for the zero-impact probability");
  stats->add_option("--max-i", stats_o.max_i, "Highest breakpoint increment compared pairwise");
  stats->add_option("--omega-max-threshold", stats_o.omega_max_threshold, "Threshold for P[omega_max > t]");
  stats->add_option("--dist-dir", stats_o.dist_dir, "Write RCDF and KDE tables here");
  add_output(stats, c);
  stats->callback([&] {
    inv.command = "stats";
    inv.run = [&](std::ostream& o, std::ostream&, RunManifest& m) { run_stats(stats_o, c, o, m); };
  });

  GenOptions gen_o;
  auto* gen = app.add_subcommand("gen", "Synthetic order logs with ground truth");
  gen->add_option("config", gen_o.config, "Generator config JSON")->required();
  gen->add_option("--days", gen_o.days, "Number of days (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_o.seed, "Override the config seed");
  add_output(gen, c);
  gen->callback([&] {
    inv.command = "gen";
    inv.output_is_directory = true;
    inv.run = [&](std::ostream&, std::ostream& e, RunManifest& m) { run_gen(gen_o, c, e, m); };
  });

  std::string rerun_manifest;
  std::string rerun_output;
  auto* rerun = app.add_subcommand("rerun", "Re-run the command recorded in a manifest");
  rerun->add_option("manifest", rerun_manifest, "A *.manifest.json written by an earlier run")->required();
  rerun->add_option("-o,--output", rerun_output, "Write to this output instead of the recorded one");
  rerun->callback([&] { inv.command = "rerun"; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << ' ' << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (inv.command == "rerun") {
      std::ifstream in(rerun_manifest, std::ios::binary);
      if (!in) throw Error(ErrorCode::kParse, "cannot open " + rerun_manifest);
      std::stringstream buf;
      buf << in.rdbuf();
      const RunManifest m = manifest_from_json(buf.str());
      if (m.args.empty() || m.args.front() != m.command) {
        throw Error(ErrorCode::kParse, rerun_manifest + ": args do not start with the command");
      }
      return run_cli(rerun_output.empty() ? m.args : with_output(m.args, rerun_output), out, err);
    }

    if (inv.command == "gen" && c.output.empty()) {
      if (const char* dir = std::getenv("AUCTION_OUT_DIR"); dir != nullptr && *dir != '\0') c.output = dir;
    }
    c.resolved_output = resolve_output(c.output);

    RunManifest m;
    m.command = inv.command;
    m.args = args;
    m.output = c.output;
    std::ostringstream report;
    inv.run(report, err, m);

    if (inv.output_is_directory) {
      write_file(manifest_path_for(c.resolved_output, true), to_json(m));
    } else if (c.resolved_output.empty()) {
      out << report.str();
    } else {
      write_file(c.resolved_output, report.str());
      write_file(manifest_path_for(c.resolved_output, false), to_json(m));
    }
    return kExitOk;
  } catch (const Error& e) {
    err << kToolName << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace auction::cli
