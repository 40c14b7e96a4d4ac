#include "copnum/simulate.hpp"

#include <algorithm>

#include "copnum/error.hpp"

namespace copnum {

bool legal_robber_move(const Graph& g, Vertex from, Vertex to) {
  return g.contains(to) && (to == from || g.adjacent(from, to));
}

bool legal_cop_move(const Graph& g, std::span<const Vertex> from, std::span<const Vertex> to) {
  if (from.size() != to.size()) return false;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!legal_robber_move(g, from[i], to[i])) return false;
  }
  return true;
}

Outcome simulate(const Graph& g, const CopController& cops, const RobberController& robber,
                 std::span<const Vertex> cop_start, std::uint32_t max_cop_moves) {
  for (Vertex c : cop_start) require_vertex(g, c);

  Outcome out;
  Configuration config;
  config.cops.assign(cop_start.begin(), cop_start.end());
  config.robber = robber.place(g, config.cops, max_cop_moves);
  config.turn = Turn::Cops;
  if (!g.contains(config.robber)) {
    out.forfeit = Forfeit::Robber;
    return out;
  }
  out.trace.push_back(config);
  if (config.captured()) {
    out.captured = true;
    return out;
  }

  while (out.cop_moves < max_cop_moves) {
    GameView view{g, out.trace, max_cop_moves};
    std::vector<Vertex> next = cops.move(view);
    if (!legal_cop_move(g, out.trace.back().cops, next)) {
      out.forfeit = Forfeit::Cops;
      return out;
    }
    ++out.cop_moves;
    config.cops = std::move(next);
    config.turn = Turn::Robber;
    out.trace.push_back(config);
    if (config.captured()) {
      out.captured = true;
      return out;
    }

    GameView robber_view{g, out.trace, max_cop_moves};
    Vertex r = robber.move(robber_view);
    if (!legal_robber_move(g, config.robber, r)) {
      out.forfeit = Forfeit::Robber;
      return out;
    }
    config.robber = r;
    config.turn = Turn::Cops;
    out.trace.push_back(config);
    if (config.captured()) {
      out.captured = true;
      return out;
    }
  }
  return out;
}

}  // namespace copnum
