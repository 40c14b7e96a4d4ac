#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "copnum/bounds.hpp"
#include "copnum/graph.hpp"
#include "copnum/strategies.hpp"

namespace copnum {

/// Graph sources: named:<name> | lps:<p>,<q> | file:<path> |
/// random:<d>,<n>,<g_min>,<seed>. A bare name is treated as named:.
/// Throws ConfigError for an unknown scheme or unusable arguments.
Graph load_graph_source(std::string_view source);

struct ExperimentConfig {
  std::string graph;
  std::string mode = "thm1";  // thm1 | thm2 | exact | bounds
  std::vector<double> epsilon_grid{1.0};
  std::uint32_t trials = 200;
  std::string robber = "greedy";
  std::uint64_t master_seed = 1;
  double success_threshold = 0.95;
  std::string output;  // empty: stdout

  std::optional<std::uint32_t> max_turns;  // cop moves per game; default 2t + 1
  bool clamp = false;                      // cap p at 1 instead of rejecting
  bool epsilon_floor = true;               // enforce epsilon >= 4/d in thm2 mode
  std::uint32_t k_max = 4;                 // exact mode
  std::uint64_t state_budget = 50'000'000; // exact mode
  std::size_t threads = 0;
};

// Field names match the struct. Unknown fields are rejected.
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string experiment_config_json(const ExperimentConfig& config);

// Throws ConfigError for trials == 0, a non-increasing grid, a bad mode or
// robber policy, or a threshold outside [0, 1].
void validate(const ExperimentConfig& config);

struct RateEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double rate = 0;
  double lo = 0;  // Wilson score interval, 95%
  double hi = 0;
};

RateEstimate wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct TrialRow {
  double epsilon = 0;
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t size_c = 0;
  Vertex start = 0;
  bool ev_holds = false;  // the bad event at the robber's start
  std::optional<bool> matching_saturated;
  bool captured = false;
  std::uint32_t cop_moves = 0;
};

struct EpsilonSummary {
  double epsilon = 0;
  double p_used = 0;
  bool clamped = false;
  RateEstimate capture;
  double mean_size = 0;
  double expected_size = 0;            // n p
  double chernoff_k = 0;               // E^0.75
  double chernoff_bound = 0;           // exp(-k^2 / (2 (E + k/3)))
  double chernoff_exceed_fraction = 0; // trials with |C| >= E + k
  RateEstimate any_bad_event;          // some vertex has the bad event
  std::vector<double> bad_event_frequency;  // per vertex
  std::map<std::uint32_t, std::uint64_t> capture_histogram;
  std::uint64_t captures_over_bound = 0;  // captured after more than 2t + 1 cop moves
};

struct ExactSummary {
  std::uint32_t k_max = 0;
  std::optional<std::uint32_t> cop_number;
  std::optional<std::uint32_t> capture_time;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n = 0;
  std::optional<std::uint32_t> girth;
  std::uint32_t t = 0;
  std::uint32_t capture_bound = 0;  // 2t + 1
  std::uint32_t max_turns = 0;
  std::vector<TrialRow> rows;
  std::vector<EpsilonSummary> summary;
  std::optional<ExactSummary> exact;
  std::optional<BoundEvaluation> bounds;
};

/// One randomized game: sample C, evaluate the bad event for every start,
/// let the robber start at the worst vertex (most uncovered frontier
/// vertices in thm1 mode, largest matching deficiency in thm2 mode; when no
/// vertex is bad the robber policy chooses), then simulate.
struct TrialSetup {
  const Graph& graph;
  GirthDecomposition girth;
  StrategyMode mode = StrategyMode::Theorem1;
  std::uint32_t t = 0;
  std::string robber = "greedy";
  std::uint32_t max_turns = 0;
  SampleOptions sample;
};

struct TrialResult {
  TrialRow row;
  RandomCopSet cops;
  std::vector<std::uint8_t> bad;  // per vertex
};

TrialResult run_trial(const TrialSetup& setup, double epsilon, std::uint32_t trial, std::uint64_t seed);

// Pass a pre-loaded graph to skip load_graph_source.
ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const Graph& graph);

// Frozen CSV columns.
inline constexpr std::string_view kCsvHeader =
    "graph,mode,epsilon,trial,seed,size_C,ev_holds,matching_saturated,captured,cop_moves";

void write_csv(const ExperimentReport& report, std::ostream& out);
void write_json(const ExperimentReport& report, std::ostream& out);

struct DensityEstimate {
  double epsilon = 0;
  double mean_size = 0;
  RateEstimate capture;
  bool appended_terminal = false;  // epsilon is the p = 1 point added to the grid
  ExperimentReport report;
};

// Epsilon with per-vertex probability exactly 1 in the given mode.
double epsilon_for_full_density(const Graph& g, StrategyMode mode, std::uint32_t t);

/// Smallest grid epsilon whose capture rate reaches the threshold. The grid
/// is extended with the p = 1 point (with clamping on), where every vertex
/// holds a cop, so a result always exists.
DensityEstimate estimate_min_cop_density(const ExperimentConfig& config, const Graph& graph);

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace copnum
