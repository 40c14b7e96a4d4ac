#include "copnum/policies.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "copnum/error.hpp"
#include "copnum/random.hpp"

namespace copnum {

std::vector<Vertex> StationaryCops::move(const GameView& view) const { return view.current().cops; }

std::vector<Vertex> ChaseCops::move(const GameView& view) const {
  const auto& now = view.current();
  auto to_robber = distances(view.graph, now.robber);
  std::vector<Vertex> next;
  next.reserve(now.cops.size());
  for (Vertex c : now.cops) next.push_back(step_toward(view.graph, to_robber, c));
  return next;
}

std::vector<Vertex> OptimalCops::move(const GameView& view) const {
  return table_.best_cop_move(view.current().cops, view.current().robber);
}

namespace {

// Distance from every vertex to its nearest cop (all kInfinity when no cops).
std::vector<std::uint32_t> cop_distances(const Graph& g, std::span<const Vertex> cops) {
  if (cops.empty()) return std::vector<std::uint32_t>(g.order(), kInfinity);
  return distances(g, cops);
}

// Stay first, then neighbors ascending: the tie-breaking order of all robbers.
std::vector<Vertex> robber_options(const Graph& g, Vertex r) {
  std::vector<Vertex> out{r};
  for (Vertex y : g.neighbors(r)) out.push_back(y);
  return out;
}

}  // namespace

Vertex GreedyRobber::place(const Graph& g, std::span<const Vertex> cops, std::uint32_t) const {
  auto dist = cop_distances(g, cops);
  return static_cast<Vertex>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

Vertex GreedyRobber::move(const GameView& view) const {
  const auto& now = view.current();
  auto dist = cop_distances(view.graph, now.cops);
  Vertex best = now.robber;
  for (Vertex y : robber_options(view.graph, now.robber)) {
    if (dist[y] > dist[best]) best = y;
  }
  return best;
}

Vertex RandomRobber::place(const Graph& g, std::span<const Vertex> cops, std::uint32_t) const {
  std::vector<Vertex> free;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (std::find(cops.begin(), cops.end(), v) == cops.end()) free.push_back(v);
  }
  if (free.empty()) return 0;
  Rng rng(mix64(seed_));
  return free[uniform_below(rng, free.size())];
}

Vertex RandomRobber::move(const GameView& view) const {
  auto options = robber_options(view.graph, view.current().robber);
  Rng rng(trial_seed(seed_, view.history.size()));
  return options[uniform_below(rng, options.size())];
}

namespace {

constexpr std::uint32_t kEscaped = 0xffffffffu;
constexpr std::uint32_t kHorizon = kEscaped - 1;  // survived past the search depth

// Robber's evaluation of a line of play: capture time in cop moves
// (kEscaped when the budget runs out first), then distance to the cops.
struct Score {
  std::uint32_t capture = 0;
  std::uint32_t distance = 0;
  auto operator<=>(const Score&) const = default;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    std::uint64_t h = 0x51ed270b27a1f3c5ULL;
    for (auto x : key) h = mix64(h ^ x);
    return static_cast<std::size_t>(h);
  }
};

class RobberSearch {
 public:
  RobberSearch(const Graph& g, const CopController& cops, std::uint32_t max_cop_moves)
      : graph_(g), cops_(cops), max_cop_moves_(max_cop_moves), memoize_(cops.markovian()) {}

  // Robber to move at history.back(); value of moving to `to`.
  Score robber_move_value(std::vector<Configuration>& history, Vertex to, std::uint32_t depth) {
    const Configuration& now = history.back();
    const std::uint32_t played = static_cast<std::uint32_t>(history.size() / 2);
    if (std::find(now.cops.begin(), now.cops.end(), to) != now.cops.end()) return {played, 0};
    Configuration next{now.cops, to, Turn::Cops};
    history.push_back(std::move(next));
    Score s = cops_turn(history, depth - 1);
    history.pop_back();
    return s;
  }

  // Cops to move at history.back().
  Score cops_turn(std::vector<Configuration>& history, std::uint32_t depth) {
    const std::uint32_t played = static_cast<std::uint32_t>(history.size() / 2);
    const Configuration& now = history.back();
    if (played >= max_cop_moves_) return {kEscaped, nearest_cop(now)};
    if (depth == 0) return {kHorizon, nearest_cop(now)};

    GameView view{graph_, history, max_cop_moves_};
    std::vector<Vertex> next = cops_.move(view);
    if (!legal_cop_move(graph_, now.cops, next)) return {kEscaped, nearest_cop(now)};
    Configuration after{std::move(next), now.robber, Turn::Robber};
    if (after.captured()) return {played + 1, 0};
    history.push_back(std::move(after));
    Score s = robber_turn(history, depth);
    history.pop_back();
    return s;
  }

  Score robber_turn(std::vector<Configuration>& history, std::uint32_t depth) {
    const Configuration& now = history.back();
    std::vector<std::uint32_t> key;
    if (memoize_) {
      key.reserve(now.cops.size() + 3);
      key.push_back(static_cast<std::uint32_t>(history.size()));
      key.push_back(depth);
      key.push_back(now.robber);
      key.insert(key.end(), now.cops.begin(), now.cops.end());
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Score best{0, 0};
    bool first = true;
    for (Vertex y : robber_options(graph_, now.robber)) {
      Score s = robber_move_value(history, y, depth);
      if (first || s > best) {
        best = s;
        first = false;
      }
      if (best.capture == kEscaped) break;
    }
    if (memoize_) memo_.emplace(std::move(key), best);
    return best;
  }

  void reset() { memo_.clear(); }

 private:
  std::uint32_t nearest_cop(const Configuration& c) const {
    if (c.cops.empty()) return kInfinity;
    auto dist = distances(graph_, c.robber);
    std::uint32_t best = kInfinity;
    for (Vertex cop : c.cops) best = std::min(best, dist[cop]);
    return best;
  }

  const Graph& graph_;
  const CopController& cops_;
  std::uint32_t max_cop_moves_;
  bool memoize_;
  std::unordered_map<std::vector<std::uint32_t>, Score, KeyHash> memo_;
};

}  // namespace

std::string LookaheadRobber::name() const {
  return depth_ ? "lookahead:" + std::to_string(*depth_) : std::string("lookahead:full");
}

Vertex LookaheadRobber::place(const Graph& g, std::span<const Vertex> cops,
                              std::uint32_t max_cop_moves) const {
  const std::uint32_t depth = depth_ ? *depth_ : max_cop_moves + 1;
  RobberSearch search(g, cops_, max_cop_moves);
  std::optional<Vertex> best;
  Score best_score;
  for (Vertex r = 0; r < g.order(); ++r) {
    if (std::find(cops.begin(), cops.end(), r) != cops.end()) continue;
    std::vector<Configuration> history{{std::vector<Vertex>(cops.begin(), cops.end()), r, Turn::Cops}};
    search.reset();
    Score s = search.cops_turn(history, depth);
    if (!best || s > best_score) {
      best = r;
      best_score = s;
    }
  }
  if (!best) return cops.empty() ? 0 : cops.front();
  return *best;
}

Vertex LookaheadRobber::move(const GameView& view) const {
  const std::uint32_t played = view.cop_moves();
  const std::uint32_t remaining = view.max_cop_moves > played ? view.max_cop_moves - played : 0;
  const std::uint32_t depth = depth_ ? std::max<std::uint32_t>(*depth_, 1) : remaining + 1;
  RobberSearch search(view.graph, cops_, view.max_cop_moves);
  std::vector<Configuration> history(view.history.begin(), view.history.end());
  const Vertex r = view.current().robber;
  Vertex best = r;
  Score best_score;
  bool first = true;
  for (Vertex y : robber_options(view.graph, r)) {
    Score s = search.robber_move_value(history, y, depth);
    if (first || s > best_score) {
      best = y;
      best_score = s;
      first = false;
    }
  }
  return best;
}

Vertex OptimalRobber::place(const Graph&, std::span<const Vertex> cops, std::uint32_t) const {
  return table_.best_robber_start(cops);
}

Vertex OptimalRobber::move(const GameView& view) const {
  return table_.best_robber_move(view.current().cops, view.current().robber);
}

namespace {

std::optional<std::uint32_t> parse_depth(std::string_view spec) {
  auto arg = spec.substr(spec.find(':') + 1);
  if (arg == "full" || arg == "inf") return std::nullopt;
  std::uint32_t depth = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), depth);
  if (ec != std::errc{} || ptr != arg.data() + arg.size() || depth == 0) {
    throw ConfigError("invalid lookahead depth in '" + std::string(spec) + "'");
  }
  return depth;
}

}  // namespace

void validate_robber_spec(std::string_view spec) {
  if (spec == "greedy" || spec == "random") return;
  if (spec.starts_with("lookahead:")) {
    parse_depth(spec);
    return;
  }
  throw ConfigError("unknown robber policy '" + std::string(spec) +
                    "' (expected greedy | random | lookahead:<depth> | lookahead:full)");
}

std::unique_ptr<RobberController> make_robber(std::string_view spec, const CopController& cops,
                                              std::uint64_t seed) {
  validate_robber_spec(spec);
  if (spec == "greedy") return std::make_unique<GreedyRobber>();
  if (spec == "random") return std::make_unique<RandomRobber>(seed);
  return std::make_unique<LookaheadRobber>(cops, parse_depth(spec));
}

}  // namespace copnum
