#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/simulate.hpp"

namespace copnum::verify {

enum class Status : std::uint8_t { Pass, Fail, Skipped };
std::string_view to_string(Status status);

struct CriterionResult {
  int id = 0;
  std::string title;
  Status status = Status::Fail;
  std::string detail;
  double seconds = 0;
};

struct CriteriaOptions {
  // Graph lookup used for every named graph, so tests can inject faults.
  std::function<Graph(std::string_view)> graphs;
  std::uint64_t state_budget = 50'000'000;
  std::size_t threads = 0;
  // Scale factors for quick runs; the acceptance binary keeps the defaults.
  std::size_t max_enumerated_order = 8;     // criterion 1
  std::uint32_t thm1_seeds = 500;           // criterion 4
  std::uint32_t thm2_seeds = 50;            // criterion 6
  std::uint32_t thm2_starts_per_seed = 8;   // criterion 6, simulated starts
  std::uint32_t lemma4_instances = 1000;    // criterion 7
  std::uint32_t chernoff_seeds = 1000;      // criterion 8
};

CriteriaOptions default_criteria_options();

// Ids run by default, in order.
std::vector<int> criterion_ids();
std::string criterion_title(int id);

// Throws ConfigError for an unknown id. BudgetExceeded inside a criterion
// yields Status::Skipped with the budget in the detail.
CriterionResult run_criterion(int id, const CriteriaOptions& options);
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const CriteriaOptions& options);

// "[PASS] 3 title (1.2s): detail"
std::string format_result(const CriterionResult& r);

/// Runs straight along a shortest path from its start to `exit`, then steps
/// to the smallest neighbor of `exit` farther from the start. Used to probe
/// every way out of B_t(start).
class ExitRunnerRobber final : public RobberController {
 public:
  ExitRunnerRobber(const Graph& g, Vertex start, Vertex exit);
  Vertex place(const Graph&, std::span<const Vertex>, std::uint32_t) const override { return start_; }
  Vertex move(const GameView& view) const override;
  std::string name() const override { return "exit-runner"; }

 private:
  const Graph& graph_;
  Vertex start_;
  Vertex exit_;
  std::vector<std::uint32_t> from_start_;
  std::vector<std::uint32_t> to_exit_;
};

}  // namespace copnum::verify
