#include "copnum/verify/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include <Eigen/Dense>

#include "copnum/error.hpp"

namespace copnum::verify {

namespace {
constexpr std::uint32_t kNever = 0xffffffffu;
}

MinimaxOracle::MinimaxOracle(const Graph& g, std::size_t k) : graph_(g), k_(k), tuples_(1) {
  const std::size_t n = g.order();
  for (std::size_t i = 0; i < k; ++i) tuples_ *= n;
  value_.assign(tuples_ * n * 2, kNever);

  std::vector<std::vector<Vertex>> closed(n);
  for (Vertex v = 0; v < n; ++v) {
    closed[v].push_back(v);
    for (Vertex w : g.neighbors(v)) closed[v].push_back(w);
  }
  auto decode = [&](std::size_t code) {
    std::vector<Vertex> cops(k);
    for (std::size_t i = k; i-- > 0;) {
      cops[i] = static_cast<Vertex>(code % n);
      code /= n;
    }
    return cops;
  };
  auto caught = [](const std::vector<Vertex>& cops, Vertex r) {
    return std::find(cops.begin(), cops.end(), r) != cops.end();
  };

  // Layer d = 0: captured positions.
  for (std::size_t code = 0; code < tuples_; ++code) {
    auto cops = decode(code);
    for (Vertex r = 0; r < n; ++r) {
      if (caught(cops, r)) {
        value_[(code * n + r) * 2] = 0;
        value_[(code * n + r) * 2 + 1] = 0;
      }
    }
  }
  // win_within(s, d) from layer d - 1; a state keeps the first d it wins at.
  for (std::uint32_t d = 1;; ++d) {
    std::vector<std::size_t> newly;
    for (std::size_t code = 0; code < tuples_; ++code) {
      auto cops = decode(code);
      for (Vertex r = 0; r < n; ++r) {
        const std::size_t base = (code * n + r) * 2;
        if (value_[base] == kNever) {
          // Cops to move: some joint move reaches a robber state won within d - 1.
          std::vector<std::size_t> choice(k, 0);
          bool win = false;
          for (;;) {
            std::size_t next = 0;
            for (std::size_t i = 0; i < k; ++i) next = next * n + closed[cops[i]][choice[i]];
            if (value_[(next * n + r) * 2 + 1] < d) {
              win = true;
              break;
            }
            std::size_t i = 0;
            while (i < k && ++choice[i] == closed[cops[i]].size()) choice[i++] = 0;
            if (i == k) break;
          }
          if (win) newly.push_back(base);
        }
        if (value_[base + 1] == kNever) {
          // Robber to move: every reply reaches a cop state won within d - 1.
          bool win = true;
          for (Vertex y : closed[r]) {
            if (value_[(code * n + y) * 2] >= d) {
              win = false;
              break;
            }
          }
          if (win) newly.push_back(base + 1);
        }
      }
    }
    if (newly.empty()) break;
    for (auto s : newly) value_[s] = d;
  }
}

std::size_t MinimaxOracle::encode(std::span<const Vertex> cops) const {
  std::size_t code = 0;
  for (Vertex c : cops) code = code * graph_.order() + c;
  return code;
}

std::optional<std::uint32_t> MinimaxOracle::plies(std::span<const Vertex> cops, Vertex robber,
                                                  bool cops_to_move) const {
  const auto v = value_[(encode(cops) * graph_.order() + robber) * 2 + (cops_to_move ? 0 : 1)];
  if (v == kNever) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------

std::optional<std::uint32_t> girth_by_cycles(const Graph& g) {
  const std::size_t n = g.order();
  std::optional<std::uint32_t> best;
  std::vector<std::uint8_t> on_path(n, 0);
  // Cycles through s whose other vertices all exceed s, closed back at s.
  std::function<void(Vertex, Vertex, std::uint32_t)> walk = [&](Vertex s, Vertex x, std::uint32_t len) {
    if (best && len >= *best) return;
    for (Vertex y : g.neighbors(x)) {
      if (y == s && len >= 3) {
        best = len;
        return;
      }
      if (y > s && !on_path[y]) {
        on_path[y] = 1;
        walk(s, y, len + 1);
        on_path[y] = 0;
      }
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    on_path[s] = 1;
    walk(s, s, 1);
    on_path[s] = 0;
  }
  return best;
}

std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.order();
  constexpr std::uint64_t kFar = kInfinity;
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kFar));
  for (Vertex v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (Vertex w : g.neighbors(v)) d[v][w] = 1;
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    }
  }
  std::vector<std::vector<std::uint32_t>> out(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = d[i][j] >= kFar ? kInfinity : static_cast<std::uint32_t>(d[i][j]);
  }
  return out;
}

std::vector<Vertex> lemma2_set_by_table(const std::vector<std::vector<std::uint32_t>>& dist, Vertex v,
                                        Vertex u, std::uint32_t t) {
  std::vector<Vertex> out;
  const auto n = static_cast<Vertex>(dist.size());
  for (Vertex x = 0; x < n; ++x) {
    if (dist[u][x] > t + 1) continue;
    bool excluded = false;
    for (Vertex w = 0; w < n && !excluded; ++w) {
      if (w != u && dist[v][w] == t && dist[w][x] <= t + 1) excluded = true;
    }
    if (!excluded) out.push_back(x);
  }
  return out;
}

std::vector<PhiRational> phi_by_bitmasks(const Graph& g, std::uint32_t k_max) {
  const std::size_t n = g.order();
  if (n > 24) throw PreconditionError("bitmask oracle supports at most 24 vertices");
  std::vector<std::uint32_t> closed(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    closed[v] = 1u << v;
    for (Vertex w : g.neighbors(v)) closed[v] |= 1u << w;
  }
  std::vector<PhiRational> best(k_max);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::uint32_t>(std::popcount(mask));
    if (size > k_max) continue;
    std::uint32_t nb = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) nb |= closed[std::countr_zero(m)];
    const std::uint64_t boundary = std::popcount(nb & ~mask);
    for (std::uint32_t k = size; k <= k_max; ++k) {
      auto& b = best[k - 1];
      if (b.size == 0 || boundary * b.size < b.boundary * size) b = {boundary, size};
    }
  }
  return best;
}

std::vector<double> dense_spectrum(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::size_t max_matching_exhaustive(const MatchingInstance& inst) {
  std::vector<Vertex> used;
  std::size_t best = 0;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t size) {
    if (size + (inst.frontier.size() - i) <= best) return;
    if (i == inst.frontier.size()) {
      best = std::max(best, size);
      return;
    }
    for (Vertex w : inst.edges[i]) {
      if (std::find(used.begin(), used.end(), w) != used.end()) continue;
      used.push_back(w);
      go(i + 1, size + 1);
      used.pop_back();
    }
    go(i + 1, size);
  };
  go(0, 0);
  return best;
}

std::size_t max_matching_deficiency(const MatchingInstance& inst) {
  const std::size_t f = inst.frontier.size();
  if (f > 20) throw PreconditionError("deficiency oracle supports at most 20 frontier vertices");
  std::int64_t worst = 0;
  std::vector<Vertex> nbrs;
  for (std::uint32_t mask = 1; mask < (1u << f); ++mask) {
    nbrs.clear();
    for (std::size_t i = 0; i < f; ++i) {
      if (mask >> i & 1u) nbrs.insert(nbrs.end(), inst.edges[i].begin(), inst.edges[i].end());
    }
    std::sort(nbrs.begin(), nbrs.end());
    const auto distinct = std::unique(nbrs.begin(), nbrs.end()) - nbrs.begin();
    worst = std::max<std::int64_t>(worst, std::popcount(mask) - distinct);
  }
  return f - static_cast<std::size_t>(worst);
}

bool is_hall_violator(const MatchingInstance& inst, std::span<const std::uint32_t> subset) {
  std::vector<Vertex> nbrs;
  for (auto i : subset) nbrs.insert(nbrs.end(), inst.edges.at(i).begin(), inst.edges.at(i).end());
  std::sort(nbrs.begin(), nbrs.end());
  nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  return !subset.empty() && nbrs.size() < subset.size();
}

bool is_valid_matching(const MatchingInstance& inst, std::span<const Vertex> mate) {
  if (mate.size() != inst.frontier.size()) return false;
  std::vector<Vertex> used;
  for (std::size_t i = 0; i < mate.size(); ++i) {
    if (mate[i] == kUnmatched) continue;
    const auto& row = inst.edges[i];
    if (std::find(row.begin(), row.end(), mate[i]) == row.end()) return false;
    used.push_back(mate[i]);
  }
  std::sort(used.begin(), used.end());
  return std::adjacent_find(used.begin(), used.end()) == used.end();
}

}  // namespace copnum::verify
