#include "copnum/game.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "copnum/error.hpp"

namespace copnum {

bool Configuration::captured() const {
  return std::find(cops.begin(), cops.end(), robber) != cops.end();
}

Configuration Configuration::canonical() const {
  Configuration c = *this;
  std::sort(c.cops.begin(), c.cops.end());
  return c;
}

std::uint64_t MultisetIndexer::multiset_count(std::size_t n, std::size_t k) {
  if (n == 0) return k == 0 ? 1 : 0;
  // C(n + k - 1, k) computed incrementally; exact while it fits.
  __extension__ unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - 1 + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

MultisetIndexer::MultisetIndexer(std::size_t n, std::size_t k)
    : n_(n), k_(k), count_(multiset_count(n, k)) {
  const std::size_t rows = n + k + 1;
  binom_.assign(rows * (k + 1), 0);
  for (std::size_t a = 0; a < rows; ++a) {
    binom_[a * (k + 1)] = 1;
    for (std::size_t b = 1; b <= std::min(a, k); ++b) {
      std::uint64_t x = binom_[(a - 1) * (k + 1) + b - 1];
      std::uint64_t y = b <= a - 1 ? binom_[(a - 1) * (k + 1) + b] : 0;
      binom_[a * (k + 1) + b] = x > std::numeric_limits<std::uint64_t>::max() - y
                                    ? std::numeric_limits<std::uint64_t>::max()
                                    : x + y;
    }
  }
}

std::uint64_t MultisetIndexer::rank(std::span<const Vertex> sorted) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < k_; ++i) r += binom(sorted[i] + i, i + 1);
  return r;
}

void MultisetIndexer::unrank(std::uint64_t rank, std::span<Vertex> out) const {
  for (std::size_t i = k_; i-- > 0;) {
    // Largest b with C(b, i+1) <= rank; b ranges over [i, n + i - 1].
    std::size_t lo = i;
    std::size_t hi = n_ + i - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi + 1) / 2;
      if (binom(mid, i + 1) <= rank) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    rank -= binom(lo, i + 1);
    out[i] = static_cast<Vertex>(lo - i);
  }
}

namespace {

// Ranks of every cop multiset reachable in one cop move (each cop stays or
// steps to a neighbor), deduplicated. The relation is symmetric, so these are
// also the predecessors.
class MoveEnumerator {
 public:
  MoveEnumerator(const Graph& g, const MultisetIndexer& indexer)
      : graph_(g), indexer_(indexer), choice_(indexer.k()), tuple_(indexer.k()),
        sorted_(indexer.k()), closed_(g.order()) {
    for (Vertex v = 0; v < g.order(); ++v) {
      auto nb = g.neighbors(v);
      auto& c = closed_[v];
      c.assign(nb.begin(), nb.end());
      c.insert(std::upper_bound(c.begin(), c.end(), v), v);
    }
  }

  const std::vector<Vertex>& closed(Vertex v) const { return closed_[v]; }

  const std::vector<std::uint64_t>& moves(std::span<const Vertex> cops) {
    const std::size_t k = cops.size();
    ranks_.clear();
    std::fill(choice_.begin(), choice_.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) sorted_[i] = closed_[cops[i]][choice_[i]];
      std::sort(sorted_.begin(), sorted_.end());
      ranks_.push_back(indexer_.rank(sorted_));
      std::size_t i = 0;
      while (i < k && ++choice_[i] == closed_[cops[i]].size()) {
        choice_[i] = 0;
        ++i;
      }
      if (i == k) break;
    }
    std::sort(ranks_.begin(), ranks_.end());
    ranks_.erase(std::unique(ranks_.begin(), ranks_.end()), ranks_.end());
    return ranks_;
  }

 private:
  const Graph& graph_;
  const MultisetIndexer& indexer_;
  std::vector<std::size_t> choice_;
  std::vector<Vertex> tuple_;
  std::vector<Vertex> sorted_;
  std::vector<std::vector<Vertex>> closed_;
  std::vector<std::uint64_t> ranks_;
};

}  // namespace

WinTable solve_k_cops(const Graph& g, std::size_t k, SolverOptions options) {
  if (k == 0) throw PreconditionError("at least one cop is required");
  if (g.order() == 0) throw PreconditionError("empty graph");
  if (!g.is_connected()) throw PreconditionError("the game requires a connected graph");

  const std::uint64_t placements = MultisetIndexer::multiset_count(g.order(), k);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / (2 * g.order());
  const std::uint64_t states =
      placements > limit ? std::numeric_limits<std::uint64_t>::max() : placements * g.order() * 2;
  if (states > options.state_budget || states > std::numeric_limits<std::uint32_t>::max()) {
    throw BudgetExceeded("k-cop state space too large", states, options.state_budget);
  }

  WinTable table(g, k);
  const std::size_t n = g.order();
  const std::uint64_t m_count = table.indexer_.count();
  table.plies_.assign(states, WinTable::kNotWon);

  std::vector<Vertex> tuples(m_count * k);
  for (std::uint64_t m = 0; m < m_count; ++m) {
    table.indexer_.unrank(m, std::span<Vertex>(tuples.data() + m * k, k));
  }
  auto tuple = [&](std::uint64_t m) { return std::span<const Vertex>(tuples.data() + m * k, k); };

  // Robber-to-move positions become cop wins once every robber reply is one.
  std::vector<std::uint16_t> pending(m_count * n);
  for (std::uint64_t m = 0; m < m_count; ++m) {
    for (Vertex r = 0; r < n; ++r) {
      pending[m * n + r] = static_cast<std::uint16_t>(std::min<std::size_t>(g.degree(r) + 1, 0xffff));
    }
  }

  std::vector<std::uint32_t> queue;
  queue.reserve(std::min<std::uint64_t>(states, 1u << 20));
  for (std::uint64_t m = 0; m < m_count; ++m) {
    auto cops = tuple(m);
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0 && cops[i] == cops[i - 1]) continue;
      for (Turn turn : {Turn::Cops, Turn::Robber}) {
        auto s = table.index(m, cops[i], turn);
        table.plies_[s] = 0;
        queue.push_back(static_cast<std::uint32_t>(s));
      }
    }
  }

  MoveEnumerator moves(g, table.indexer_);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint64_t s = queue[head];
    const auto turn = static_cast<Turn>(s & 1);
    const Vertex r = static_cast<Vertex>((s / 2) % n);
    const std::uint64_t m = s / 2 / n;
    const std::uint32_t next = table.plies_[s] + 1u;
    if (next >= WinTable::kNotWon) throw Error("capture depth exceeds table range");

    if (turn == Turn::Robber) {
      // Cops-to-move predecessors: any cop move landing on this multiset.
      for (std::uint64_t pm : moves.moves(tuple(m))) {
        auto ps = table.index(pm, r, Turn::Cops);
        if (table.plies_[ps] == WinTable::kNotWon) {
          table.plies_[ps] = static_cast<std::uint16_t>(next);
          queue.push_back(static_cast<std::uint32_t>(ps));
        }
      }
    } else {
      // Robber-to-move predecessors: the robber came from N[r].
      for (Vertex pr : moves.closed(r)) {
        auto ps = table.index(m, pr, Turn::Robber);
        if (table.plies_[ps] != WinTable::kNotWon) continue;
        if (--pending[m * n + pr] == 0) {
          table.plies_[ps] = static_cast<std::uint16_t>(next);
          queue.push_back(static_cast<std::uint32_t>(ps));
        }
      }
    }
  }
  return table;
}

std::uint64_t WinTable::rank_of(std::span<const Vertex> cops) const {
  if (cops.size() != indexer_.k()) {
    throw PreconditionError("expected " + std::to_string(indexer_.k()) + " cops, got " +
                            std::to_string(cops.size()));
  }
  std::vector<Vertex> sorted(cops.begin(), cops.end());
  for (Vertex c : sorted) require_vertex(graph_, c);
  std::sort(sorted.begin(), sorted.end());
  return indexer_.rank(sorted);
}

bool WinTable::cop_wins(std::span<const Vertex> cops, Vertex robber, Turn turn) const {
  return plies(cops, robber, turn).has_value();
}

std::optional<std::uint32_t> WinTable::plies(std::span<const Vertex> cops, Vertex robber,
                                             Turn turn) const {
  require_vertex(graph_, robber);
  auto p = plies_[index(rank_of(cops), robber, turn)];
  if (p == kNotWon) return std::nullopt;
  return p;
}

std::optional<std::uint32_t> WinTable::cop_moves_to_capture(std::span<const Vertex> cops,
                                                            Vertex robber) const {
  auto p = plies(cops, robber, Turn::Cops);
  if (!p) return std::nullopt;
  return (*p + 1) / 2;
}

bool WinTable::winning_placement(std::span<const Vertex> cops) const {
  return placement_capture_time(cops).has_value();
}

std::optional<std::uint32_t> WinTable::placement_capture_time(std::span<const Vertex> cops) const {
  auto m = rank_of(cops);
  std::uint32_t worst = 0;
  for (Vertex r = 0; r < graph_.order(); ++r) {
    auto p = plies_[index(m, r, Turn::Cops)];
    if (p == kNotWon) return std::nullopt;
    worst = std::max<std::uint32_t>(worst, (p + 1u) / 2);
  }
  return worst;
}

bool WinTable::has_winning_placement() const { return best_placement().has_value(); }

std::optional<std::vector<Vertex>> WinTable::best_placement() const {
  std::optional<std::vector<Vertex>> best;
  std::uint32_t best_time = 0;
  std::vector<Vertex> cops(indexer_.k());
  for (std::uint64_t m = 0; m < indexer_.count(); ++m) {
    std::uint32_t worst = 0;
    bool wins = true;
    for (Vertex r = 0; r < graph_.order() && wins; ++r) {
      auto p = plies_[index(m, r, Turn::Cops)];
      if (p == kNotWon) wins = false;
      worst = std::max<std::uint32_t>(worst, (p + 1u) / 2);
    }
    if (wins && (!best || worst < best_time)) {
      indexer_.unrank(m, cops);
      best = cops;
      best_time = worst;
    }
  }
  return best;
}

std::optional<std::uint32_t> WinTable::capture_time() const {
  auto placement = best_placement();
  if (!placement) return std::nullopt;
  return placement_capture_time(*placement);
}

std::vector<Vertex> WinTable::best_cop_move(std::span<const Vertex> cops, Vertex robber) const {
  const std::size_t k = cops.size();
  std::vector<Vertex> current(cops.begin(), cops.end());
  if (k != indexer_.k()) throw PreconditionError("cop count does not match the table");
  std::vector<std::vector<Vertex>> options(k);
  for (std::size_t i = 0; i < k; ++i) {
    require_vertex(graph_, cops[i]);
    auto nb = graph_.neighbors(cops[i]);
    options[i].assign(nb.begin(), nb.end());
    options[i].insert(std::upper_bound(options[i].begin(), options[i].end(), cops[i]), cops[i]);
  }
  std::vector<std::size_t> choice(k, 0);
  std::vector<Vertex> candidate(k);
  std::vector<Vertex> sorted(k);
  std::vector<Vertex> best = current;
  std::uint32_t best_plies = kNotWon;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) candidate[i] = options[i][choice[i]];
    sorted = candidate;
    std::sort(sorted.begin(), sorted.end());
    auto p = plies_[index(indexer_.rank(sorted), robber, Turn::Robber)];
    if (p < best_plies) {
      best_plies = p;
      best = candidate;
    }
    std::size_t i = k;
    // Odometer over choices, last cop varying fastest: lexicographic order.
    while (i > 0 && ++choice[i - 1] == options[i - 1].size()) {
      choice[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return best;
}

Vertex WinTable::best_robber_move(std::span<const Vertex> cops, Vertex robber) const {
  auto m = rank_of(cops);
  std::vector<Vertex> options{robber};
  for (Vertex y : graph_.neighbors(robber)) options.push_back(y);
  Vertex best = robber;
  std::uint32_t best_plies = 0;
  bool first = true;
  for (Vertex y : options) {
    std::uint32_t p = plies_[index(m, y, Turn::Cops)];
    if (first || p > best_plies) {
      best = y;
      best_plies = p;
      first = false;
    }
  }
  return best;
}

Vertex WinTable::best_robber_start(std::span<const Vertex> cops) const {
  auto m = rank_of(cops);
  Vertex best = 0;
  std::uint32_t best_plies = 0;
  for (Vertex r = 0; r < graph_.order(); ++r) {
    std::uint32_t p = plies_[index(m, r, Turn::Cops)];
    if (r == 0 || p > best_plies) {
      best = r;
      best_plies = p;
    }
  }
  return best;
}

CopNumber cop_number_exact(const Graph& g, std::size_t k_max, SolverOptions options) {
  if (!g.is_connected()) throw PreconditionError("cop number requires a connected graph");
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (solve_k_cops(g, k, options).has_winning_placement()) return {k, k_max};
  }
  return {std::nullopt, k_max};
}

std::uint32_t capture_time(const Graph& g, std::size_t k, SolverOptions options) {
  auto t = solve_k_cops(g, k, options).capture_time();
  if (!t) {
    throw PreconditionError("no finite capture time: " + std::to_string(k) +
                            " cop(s) cannot win on this graph");
  }
  return *t;
}

}  // namespace copnum
