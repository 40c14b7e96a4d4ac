#pragma once

// Brute-force reference implementations. Each one is written independently
// of the library algorithm it checks and is only meant for small inputs.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/strategies.hpp"

namespace copnum::verify {

/// Depth-bounded minimax over ORDERED cop tuples, memoized by depth layer:
/// win_within(s, d) is computed for d = 0, 1, 2, ... until no state changes.
/// plies() is the least such d, or nullopt if the robber survives forever.
class MinimaxOracle {
 public:
  MinimaxOracle(const Graph& g, std::size_t k);

  std::optional<std::uint32_t> plies(std::span<const Vertex> cops, Vertex robber, bool cops_to_move) const;
  std::size_t cops() const noexcept { return k_; }

 private:
  std::size_t encode(std::span<const Vertex> cops) const;

  const Graph& graph_;
  std::size_t k_;
  std::size_t tuples_;
  std::vector<std::uint32_t> value_;  // (tuple * n + robber) * 2 + side; UINT32_MAX = never
};

// Shortest cycle by enumerating simple cycles from each smallest vertex.
std::optional<std::uint32_t> girth_by_cycles(const Graph& g);

// All-pairs distances by Floyd-Warshall (kInfinity when unreachable).
std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g);

/// U = B_{t+1}(u) minus the union of B_{t+1}(w) over w != u with
/// dist(v, w) = t, from an all-pairs table.
std::vector<Vertex> lemma2_set_by_table(const std::vector<std::vector<std::uint32_t>>& dist, Vertex v,
                                        Vertex u, std::uint32_t t);

/// Phi(G, k) for k = 1 .. k_max as (boundary, size) of a minimizing set,
/// from a scan over all bitmasks (n <= 24).
struct PhiRational {
  std::uint64_t boundary = 0;
  std::uint64_t size = 0;
};
std::vector<PhiRational> phi_by_bitmasks(const Graph& g, std::uint32_t k_max);

// Adjacency spectrum in descending order (dense symmetric solver).
std::vector<double> dense_spectrum(const Graph& g);

// Maximum matching size by trying every matching (tiny instances).
std::size_t max_matching_exhaustive(const MatchingInstance& inst);

// |F| - max over S of (|S| - |N(S)|), over all frontier subsets (|F| <= 20).
std::size_t max_matching_deficiency(const MatchingInstance& inst);

// True when S is a Hall violator: |N(S)| < |S|.
bool is_hall_violator(const MatchingInstance& inst, std::span<const std::uint32_t> subset);

// True when mate is a matching of inst (distinct cops, real edges).
bool is_valid_matching(const MatchingInstance& inst, std::span<const Vertex> mate);

}  // namespace copnum::verify
