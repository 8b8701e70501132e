#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "auction/event_log.hpp"
#include "cli/cli.hpp"
#include "oracles/fixtures.hpp"

namespace fs = std::filesystem;
using namespace auction;
using namespace fixture;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("auction_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_log(const std::string& name, const std::vector<OrderEvent>& events) const {
    std::ofstream f(path(name), std::ios::binary);
    write_event_log(f, events);
    return path(name);
  }

  int run(std::vector<std::string> args) {
    out_.str({});
    err_.str({});
    return cli::run_cli(args, out_, err_);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, ReplayClearsTheWorkedExample) {
  const std::string log = write_log("ex.csv", clearing_example());
  ASSERT_EQ(run({"replay", log, "--ref", "10.0"}), 0) << err_.str();
  EXPECT_NE(out_.str().find("\"p_a\": 10.1"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("\"q_a\": 60"), std::string::npos);
  ASSERT_EQ(run({"replay", log, "--until", "3"}), 3);  // sells only
}

TEST_F(Cli, ImpactOnOneSharePerTick) {
  std::vector<OrderEvent> ev;
  std::int64_t ts = 0;
  ev.push_back(submit(++ts, "b0", Side::kBuy, "10.0", 1));
  ev.push_back(submit(++ts, "s0", Side::kSell, "10.0", 1));
  for (int k = 1; k <= 5; ++k) {
    const std::string up = std::to_string(10 + k) + ".0";
    const std::string down = std::to_string(10 - k) + ".0";
    ev.push_back(submit(++ts, "u" + std::to_string(k), Side::kSell, up, 1));
    ev.push_back(submit(++ts, "d" + std::to_string(k), Side::kBuy, down, 1));
  }
  const std::string log = write_log("one.csv", ev);
  ASSERT_EQ(run({"impact", log, "--tick", "1", "--side", "B", "--max-x", "100%", "-o", path("imp.csv")}), 0)
      << err_.str();
  std::istringstream lines(slurp(path("imp.csv")));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "side,i,omega_num,omega_den,price,impact_log");
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 10), "B,0,1,1,11");
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 10), "B,1,2,1,12");
  EXPECT_TRUE(fs::exists(path("imp.signed.csv")));
  EXPECT_TRUE(fs::exists(path("imp.csv.manifest.json")) || fs::exists(path("imp.manifest.json")));
}

TEST_F(Cli, ExitCodes) {
  const std::string log = write_log("ex.csv", clearing_example());
  EXPECT_EQ(run({"frobnicate"}), 64);
  EXPECT_EQ(run({"replay"}), 64);
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_EQ(run({"replay", path("missing.csv")}), 2);

  std::vector<OrderEvent> nocross = {submit(1, "b", Side::kBuy, "9.9", 5), submit(2, "s", Side::kSell, "10.1", 5)};
  EXPECT_EQ(run({"replay", write_log("nocross.csv", nocross)}), 3);

  std::vector<OrderEvent> unsorted = clearing_example();
  std::swap(unsorted[0].timestamp_us, unsorted[3].timestamp_us);
  EXPECT_EQ(run({"replay", write_log("unsorted.csv", unsorted)}), 2);
  EXPECT_NE(err_.str().find("time-sorted"), std::string::npos) << err_.str();

  std::ofstream(path("bad.csv")) << "not,a,log\n";
  EXPECT_EQ(run({"replay", path("bad.csv")}), 2);

  // Six orders leave far fewer than 20 density samples.
  EXPECT_EQ(run({"regime", log, "--ref", "10.0"}), 4);
}

TEST_F(Cli, ManifestRerunIsByteIdentical) {
  const std::string log = write_log("ex.csv", clearing_example());
  ASSERT_EQ(run({"impact", log, "--ref", "10.0", "-o", path("a.csv")}), 0) << err_.str();
  const std::string manifest = path("a.csv.manifest.json");
  ASSERT_TRUE(fs::exists(manifest)) << "manifest missing";
  const std::string first = slurp(path("a.csv"));
  fs::remove(path("a.csv"));
  ASSERT_EQ(run({"rerun", manifest}), 0) << err_.str();
  EXPECT_EQ(slurp(path("a.csv")), first);
  ASSERT_EQ(run({"rerun", manifest, "-o", path("b.csv")}), 0) << err_.str();
  EXPECT_EQ(slurp(path("b.csv")), first);
}

TEST_F(Cli, GeneratedDaysRunThroughThePipeline) {
  std::ofstream(path("cfg.json")) << R"({"seed": 5, "half_width_bp": 150,
    "shape": {"kind": "piecewise", "volume_per_tick": 300, "delta_star_bp": 40, "decay_per_bp": 0.02},
    "market_fraction": 0.02, "cancel_rate": 0.2})";
  ASSERT_EQ(run({"gen", path("cfg.json"), "--days", "3", "-o", path("gen")}), 0) << err_.str();
  std::vector<std::string> logs;
  for (int d = 0; d < 3; ++d) {
    char name[32];
    std::snprintf(name, sizeof name, "gen/day_%03d.csv", d);
    logs.push_back(path(name));
    ASSERT_TRUE(fs::exists(logs.back()));
  }
  auto with = [&](std::vector<std::string> head) {
    head.insert(head.begin() + 1, logs.begin(), logs.end());
    return head;
  };
  ASSERT_EQ(run(with({"metrics", "--threads", "2", "-o", path("m.csv")})), 0) << err_.str();
  ASSERT_EQ(run({"stats", path("m.csv"), "-o", path("s.json")}), 0) << err_.str();
  EXPECT_NE(slurp(path("s.json")).find("zero_impact"), std::string::npos);
  ASSERT_EQ(run(with({"regime", "-o", path("r.csv")})), 0) << err_.str();
  ASSERT_EQ(run(with({"density", "--group", "latency", "-o", path("d.csv")})), 0) << err_.str();
  ASSERT_EQ(run(with({"response", "--virtual", "--warmup", "10s", "-o", path("resp.csv")})), 0) << err_.str();
  ASSERT_EQ(run({"series", logs[0], "--interval", "60s", "-o", path("series.csv")}), 0) << err_.str();

  // metrics with one and two threads agree
  ASSERT_EQ(run(with({"metrics", "-o", path("m1.csv")})), 0);
  EXPECT_EQ(slurp(path("m1.csv")), slurp(path("m.csv")));

  // regime recovers the 40 bp window on each day
  std::istringstream r(slurp(path("r.csv")));
  std::string line;
  std::getline(r, line);
  int rows = 0;
  while (std::getline(r, line)) {
    std::stringstream cells(line);
    std::string date, side, delta;
    std::getline(cells, date, ',');
    std::getline(cells, side, ',');
    std::getline(cells, delta, ',');
    EXPECT_NEAR(std::stod(delta), 40.0, 1.0) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 6);
}
