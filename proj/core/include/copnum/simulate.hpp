#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "copnum/game.hpp"
#include "copnum/graph.hpp"

namespace copnum {

/// What a controller sees when asked to move: the graph, every
/// configuration so far (history.front() is the initial placement with the
/// robber's chosen start) and the simulation's cop-move budget.
struct GameView {
  const Graph& graph;
  std::span<const Configuration> history;
  std::uint32_t max_cop_moves = 0;

  const Configuration& current() const { return history.back(); }
  Vertex robber_start() const { return history.front().robber; }
  // Cop moves already played.
  std::uint32_t cop_moves() const { return static_cast<std::uint32_t>(history.size() / 2); }
};

/// Cop decision procedure. move() returns the next position of every cop,
/// in cop-identity order; each entry must lie in N[current position].
class CopController {
 public:
  virtual ~CopController() = default;
  virtual std::vector<Vertex> move(const GameView& view) const = 0;

  // True when move() depends only on (initial configuration, current
  // configuration, number of cop moves played). Lets searching robbers
  // merge transpositions.
  virtual bool markovian() const { return false; }
  virtual std::string name() const = 0;
};

/// Robber decision procedure. place() sees the cop placement (and the
/// game's cop-move budget) before choosing a start.
class RobberController {
 public:
  virtual ~RobberController() = default;
  virtual Vertex place(const Graph& g, std::span<const Vertex> cops,
                       std::uint32_t max_cop_moves) const = 0;
  virtual Vertex move(const GameView& view) const = 0;
  virtual std::string name() const = 0;
};

enum class Forfeit : std::uint8_t { None, Cops, Robber };

struct Outcome {
  bool captured = false;
  std::uint32_t cop_moves = 0;  // cop moves played (capture time when captured)
  Forfeit forfeit = Forfeit::None;
  std::vector<Configuration> trace;

  bool cops_win() const noexcept { return captured || forfeit == Forfeit::Robber; }
};

// Legal cop move: same number of cops, each stays or steps along an edge.
bool legal_cop_move(const Graph& g, std::span<const Vertex> from, std::span<const Vertex> to);
bool legal_robber_move(const Graph& g, Vertex from, Vertex to);

/// Plays the game: cops are placed at cop_start, the robber chooses its start
/// having seen them, then cops and robber alternate with cops first. Capture
/// is checked after every move, including a robber stepping onto a cop. At
/// most max_cop_moves cop moves are played.
Outcome simulate(const Graph& g, const CopController& cops, const RobberController& robber,
                 std::span<const Vertex> cop_start, std::uint32_t max_cop_moves);

}  // namespace copnum
