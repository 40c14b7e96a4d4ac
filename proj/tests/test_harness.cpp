#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "copnum/error.hpp"
#include "copnum/game.hpp"
#include "copnum/generators.hpp"
#include "copnum/harness.hpp"
#include "copnum/random.hpp"

using namespace copnum;

namespace {

ExperimentConfig mcgee_config() {
  ExperimentConfig c;
  c.graph = "named:mcgee";
  c.mode = "thm1";
  c.epsilon_grid = {0.5, 1.0};
  c.trials = 20;
  c.robber = "greedy";
  c.master_seed = 3;
  return c;
}

std::string csv_of(const ExperimentReport& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

}  // namespace

TEST(Seeds, FixedDerivation) {
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(trial_seed(7, 3), mix64(7 ^ mix64(3)));
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
}

TEST(Wilson, Interval) {
  const auto all = wilson(10, 10);
  EXPECT_DOUBLE_EQ(all.rate, 1.0);
  EXPECT_DOUBLE_EQ(all.hi, 1.0);
  const double z2 = 1.959963984540054 * 1.959963984540054;
  EXPECT_NEAR(all.lo, 10 / (10 + z2), 1e-12);
  const auto half = wilson(50, 100);
  EXPECT_NEAR(half.lo, 0.4038315, 1e-6);
  EXPECT_NEAR(half.hi, 0.5961685, 1e-6);
  const auto none = wilson(0, 0);
  EXPECT_DOUBLE_EQ(none.rate, 0.0);
}

TEST(Config, JsonRoundTrip) {
  auto c = mcgee_config();
  c.max_turns = 5;
  c.clamp = true;
  const auto back = parse_experiment_config(experiment_config_json(c));
  EXPECT_EQ(back.graph, c.graph);
  EXPECT_EQ(back.epsilon_grid, c.epsilon_grid);
  EXPECT_EQ(back.trials, c.trials);
  EXPECT_EQ(back.max_turns, 5u);
  EXPECT_TRUE(back.clamp);
  EXPECT_EQ(back.master_seed, 3u);
}

TEST(Config, Rejections) {
  EXPECT_THROW((void)parse_experiment_config(R"({"graph": "mcgee", "trials": 3, "colour": 1})"), ConfigError);
  EXPECT_THROW((void)parse_experiment_config("{not json"), ConfigError);
  auto c = mcgee_config();
  c.trials = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = mcgee_config();
  c.epsilon_grid = {1.0, 1.0};
  EXPECT_THROW(validate(c), ConfigError);
  c = mcgee_config();
  c.mode = "thm3";
  EXPECT_THROW(validate(c), ConfigError);
  c = mcgee_config();
  c.robber = "teleport";
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, PrerequisitesCheckedBeforeTrials) {
  auto c = mcgee_config();
  c.graph = "named:petersen";  // girth 5
  EXPECT_THROW((void)run_experiment(c), ConfigError);
  c = mcgee_config();
  c.epsilon_grid = {1.0, 10.0};  // p > 1 without clamping
  EXPECT_THROW((void)run_experiment(c), ConfigError);
}

TEST(GraphSource, Schemes) {
  EXPECT_EQ(load_graph_source("named:petersen"), named_graph("petersen"));
  EXPECT_EQ(load_graph_source("petersen"), named_graph("petersen"));
  EXPECT_EQ(load_graph_source("random:3,14,6,1").order(), 14u);
  EXPECT_EQ(load_graph_source("lps:5,13").order(), 2184u);
  EXPECT_THROW((void)load_graph_source("ftp:x"), ConfigError);
  EXPECT_THROW((void)load_graph_source("file:/nonexistent/graph.txt"), ConfigError);
  EXPECT_THROW((void)load_graph_source("lps:6,13"), ConfigError);
}

TEST(Experiment, FullDensityAlwaysCaptures) {
  auto c = mcgee_config();
  c.trials = 1;
  c.epsilon_grid = {3.0};
  const auto r = run_experiment(c);
  ASSERT_EQ(r.summary.size(), 1u);
  EXPECT_DOUBLE_EQ(r.summary[0].p_used, 1.0);
  EXPECT_DOUBLE_EQ(r.summary[0].capture.rate, 1.0);
}

TEST(Experiment, CsvHeaderAndRows) {
  const auto r = run_experiment(mcgee_config());
  const auto csv = csv_of(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), std::string(kCsvHeader));
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 1u + 2 * 20);
  EXPECT_EQ(r.capture_bound, 3u);
  EXPECT_EQ(r.max_turns, 3u);
  for (const auto& row : r.rows) EXPECT_EQ(row.seed, trial_seed(3, row.trial));
}

TEST(Experiment, ByteIdenticalRerun) {
  auto c = mcgee_config();
  c.robber = "random";
  c.threads = 1;
  const auto a = run_experiment(c);
  c.threads = 3;
  const auto b = run_experiment(c);
  EXPECT_EQ(csv_of(a), csv_of(b));
  std::ostringstream ja, jb;
  write_json(a, ja);
  write_json(b, jb);
  EXPECT_EQ(ja.str(), jb.str());
}

TEST(Experiment, CaptureRateMonotoneInEpsilon) {
  auto c = mcgee_config();
  c.epsilon_grid = {0.5, 1.0, 2.0, 3.0};
  c.trials = 200;
  c.robber = "lookahead:full";
  const auto r = run_experiment(c);
  for (std::size_t i = 1; i < r.summary.size(); ++i) {
    const auto& lo = r.summary[i - 1].capture;
    const auto& hi = r.summary[i].capture;
    const double sigma = std::sqrt(lo.rate * (1 - lo.rate) / lo.trials + hi.rate * (1 - hi.rate) / hi.trials);
    EXPECT_GE(hi.rate, lo.rate - 2 * sigma - 1e-12);
  }
}

TEST(Experiment, CertifiedTrialsCaptured) {
  auto c = mcgee_config();
  c.epsilon_grid = {2.0};
  c.trials = 100;
  c.robber = "lookahead:full";
  const auto r = run_experiment(c);
  for (const auto& row : r.rows) {
    if (!row.ev_holds) EXPECT_TRUE(row.captured);
  }
}

TEST(Experiment, Thm2ModeReportsMatching) {
  ExperimentConfig c;
  c.graph = "named:tutte_coxeter";
  c.mode = "thm2";
  c.epsilon_grid = {0.005, 0.01};
  c.epsilon_floor = false;
  c.trials = 10;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.t, 3u);
  for (const auto& row : r.rows) {
    ASSERT_TRUE(row.matching_saturated.has_value());
    if (*row.matching_saturated) EXPECT_TRUE(row.captured);
  }
}

TEST(Experiment, ExactAndBoundsModes) {
  ExperimentConfig c;
  c.graph = "named:petersen";
  c.mode = "exact";
  const auto e = run_experiment(c);
  ASSERT_TRUE(e.exact.has_value());
  EXPECT_EQ(e.exact->cop_number, 3u);
  c.mode = "bounds";
  const auto b = run_experiment(c);
  ASSERT_TRUE(b.bounds.has_value());
  EXPECT_DOUBLE_EQ(b.bounds->frankl_lower, 2.0 / 5.0);
}

TEST(MinDensity, ThresholdZeroGivesFirstPoint) {
  auto c = mcgee_config();
  c.success_threshold = 0;
  const auto est = estimate_min_cop_density(c, named_graph("mcgee"));
  EXPECT_DOUBLE_EQ(est.epsilon, 0.5);
  EXPECT_FALSE(est.appended_terminal);
}

TEST(MinDensity, TerminalPointOnTree) {
  ExperimentConfig c;
  c.graph = "named:path(6)";
  c.mode = "thm1";
  c.epsilon_grid = {0.01};
  c.trials = 30;
  c.success_threshold = 1.0;
  const Graph g = named_graph("path(6)");
  const auto est = estimate_min_cop_density(c, g);
  EXPECT_GE(est.capture.rate, 1.0);
  if (est.appended_terminal) {
    EXPECT_DOUBLE_EQ(est.epsilon, epsilon_for_full_density(g, StrategyMode::Theorem1, 1));
  }
}

TEST(MinDensity, McGeeAgainstExactCopNumber) {
  auto c = mcgee_config();
  c.epsilon_grid = {0.5, 1.0, 1.5, 2.0, 2.5};
  c.trials = 100;
  c.success_threshold = 0.95;
  c.master_seed = 7;
  const Graph g = named_graph("mcgee");
  const auto est = estimate_min_cop_density(c, g);
  EXPECT_GE(est.capture.rate, 0.95);
  // A random placement can never beat the exact cop number on average by much.
  const auto cn = cop_number_exact(g, 2, {});
  if (cn.value) EXPECT_GE(est.mean_size + 3.0, static_cast<double>(*cn.value));
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
}
