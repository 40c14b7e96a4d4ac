#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "copnum/graph.hpp"

namespace copnum {

enum class Turn : std::uint8_t { Cops = 0, Robber = 1 };

/// One game position. Cops are kept in cop-identity order in simulation
/// traces; the solver works on the sorted (multiset) form.
struct Configuration {
  std::vector<Vertex> cops;
  Vertex robber = 0;
  Turn turn = Turn::Cops;

  bool captured() const;
  Configuration canonical() const;
  bool operator==(const Configuration&) const = default;
};

/// Dense ranking of sorted k-multisets over {0..n-1} (colex order of the
/// associated k-combinations of {0..n+k-2}).
class MultisetIndexer {
 public:
  MultisetIndexer(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::uint64_t count() const noexcept { return count_; }

  // `sorted` must be non-decreasing with k entries.
  std::uint64_t rank(std::span<const Vertex> sorted) const;
  void unrank(std::uint64_t rank, std::span<Vertex> out) const;

  // C(n + k - 1, k), saturating at UINT64_MAX.
  static std::uint64_t multiset_count(std::size_t n, std::size_t k);

 private:
  std::uint64_t binom(std::size_t a, std::size_t b) const { return binom_[a * (k_ + 1) + b]; }

  std::size_t n_;
  std::size_t k_;
  std::uint64_t count_;
  std::vector<std::uint64_t> binom_;
};

struct SolverOptions {
  // Upper bound on stored game states (cop multisets x robber x turn).
  std::uint64_t state_budget = 50'000'000;
};

/// Solved k-cop game: for every canonical configuration, whether the cops
/// force capture and, if so, in how many plies under optimal play. A ply is
/// one side's move; cops move first after placement.
class WinTable {
 public:
  static constexpr std::uint16_t kNotWon = 0xffff;

  const Graph& graph() const noexcept { return graph_; }
  std::size_t cops() const noexcept { return indexer_.k(); }
  std::uint64_t state_count() const noexcept { return plies_.size(); }

  bool cop_wins(std::span<const Vertex> cops, Vertex robber, Turn turn) const;
  std::optional<std::uint32_t> plies(std::span<const Vertex> cops, Vertex robber, Turn turn) const;

  // Cop moves until capture from a cops-to-move position: ceil(plies / 2).
  std::optional<std::uint32_t> cop_moves_to_capture(std::span<const Vertex> cops, Vertex robber) const;

  // True when the placement wins against every robber start.
  bool winning_placement(std::span<const Vertex> cops) const;

  // Worst case over robber starts of the optimal capture time from `cops`.
  std::optional<std::uint32_t> placement_capture_time(std::span<const Vertex> cops) const;

  bool has_winning_placement() const;

  // Placement minimizing placement_capture_time (smallest rank on ties).
  std::optional<std::vector<Vertex>> best_placement() const;

  // min over placements of max over robber starts, in cop moves.
  std::optional<std::uint32_t> capture_time() const;

  // Optimal replies. Cop moves keep cop identity: out[i] is in N[cops[i]].
  std::vector<Vertex> best_cop_move(std::span<const Vertex> cops, Vertex robber) const;
  Vertex best_robber_move(std::span<const Vertex> cops, Vertex robber) const;
  Vertex best_robber_start(std::span<const Vertex> cops) const;

  // Raw access by multiset rank, for exhaustive comparisons.
  const MultisetIndexer& indexer() const noexcept { return indexer_; }
  std::uint16_t plies_at(std::uint64_t rank, Vertex robber, Turn turn) const {
    return plies_[index(rank, robber, turn)];
  }

 private:
  friend WinTable solve_k_cops(const Graph&, std::size_t, SolverOptions);
  WinTable(const Graph& g, std::size_t k) : graph_(g), indexer_(g.order(), k) {}

  std::uint64_t index(std::uint64_t rank, Vertex robber, Turn turn) const {
    return (rank * graph_.order() + robber) * 2 + static_cast<std::uint64_t>(turn);
  }
  std::uint64_t rank_of(std::span<const Vertex> cops) const;

  Graph graph_;
  MultisetIndexer indexer_;
  std::vector<std::uint16_t> plies_;
};

/// Retrograde analysis of the k-cop game. Throws PreconditionError for a
/// disconnected graph or k == 0, BudgetExceeded when the state space is
/// larger than options.state_budget.
WinTable solve_k_cops(const Graph& g, std::size_t k, SolverOptions options = {});

struct CopNumber {
  std::optional<std::size_t> value;  // empty: greater than k_max
  std::size_t k_max = 0;
};

/// Least k <= k_max with a winning placement.
CopNumber cop_number_exact(const Graph& g, std::size_t k_max, SolverOptions options = {});

/// Optimal capture time with k cops, in cop moves. Throws PreconditionError
/// when k cops cannot win (no finite capture time).
std::uint32_t capture_time(const Graph& g, std::size_t k, SolverOptions options = {});

}  // namespace copnum
