#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "copnum/game.hpp"
#include "copnum/simulate.hpp"

namespace copnum {

// Cops never move.
class StationaryCops final : public CopController {
 public:
  std::vector<Vertex> move(const GameView& view) const override;
  bool markovian() const override { return true; }
  std::string name() const override { return "stationary"; }
};

// Every cop takes one step along a shortest path to the robber's current
// vertex (smallest next vertex on ties).
class ChaseCops final : public CopController {
 public:
  std::vector<Vertex> move(const GameView& view) const override;
  bool markovian() const override { return true; }
  std::string name() const override { return "chase"; }
};

// Optimal play read from a solved WinTable.
class OptimalCops final : public CopController {
 public:
  explicit OptimalCops(const WinTable& table) : table_(table) {}
  std::vector<Vertex> move(const GameView& view) const override;
  bool markovian() const override { return true; }
  std::string name() const override { return "optimal"; }

 private:
  const WinTable& table_;
};

/// Maximizes the minimum distance to any cop. Ties prefer staying put, then
/// the lowest vertex index. Placement picks the farthest vertex from the
/// cops (lowest index on ties).
class GreedyRobber final : public RobberController {
 public:
  Vertex place(const Graph& g, std::span<const Vertex> cops, std::uint32_t) const override;
  Vertex move(const GameView& view) const override;
  std::string name() const override { return "greedy"; }
};

/// Uniform over N[r]; the stream is keyed by (seed, ply) so decisions are a
/// pure function of the history.
class RandomRobber final : public RobberController {
 public:
  explicit RandomRobber(std::uint64_t seed) : seed_(seed) {}
  Vertex place(const Graph& g, std::span<const Vertex> cops, std::uint32_t) const override;
  Vertex move(const GameView& view) const override;
  std::string name() const override { return "random"; }

 private:
  std::uint64_t seed_;
};

/// Exhaustive search over the robber's own move sequences against a known
/// deterministic cop controller. With depth = nullopt the search runs to the
/// end of the game's cop-move budget, which makes it an exact adversary for
/// that controller: it escapes whenever any robber strategy does and
/// otherwise maximizes the capture time. Finite depths fall back to the
/// greedy distance score at the search frontier.
class LookaheadRobber final : public RobberController {
 public:
  LookaheadRobber(const CopController& cops, std::optional<std::uint32_t> depth)
      : cops_(cops), depth_(depth) {}
  Vertex place(const Graph& g, std::span<const Vertex> cops, std::uint32_t max_cop_moves) const override;
  Vertex move(const GameView& view) const override;
  std::string name() const override;

 private:
  const CopController& cops_;
  std::optional<std::uint32_t> depth_;
};

// Starts at a fixed vertex, then defers to another policy.
class ForcedStartRobber final : public RobberController {
 public:
  ForcedStartRobber(const RobberController& inner, Vertex start) : inner_(inner), start_(start) {}
  Vertex place(const Graph&, std::span<const Vertex>, std::uint32_t) const override { return start_; }
  Vertex move(const GameView& view) const override { return inner_.move(view); }
  std::string name() const override { return inner_.name() + "@" + std::to_string(start_); }

 private:
  const RobberController& inner_;
  Vertex start_;
};

class OptimalRobber final : public RobberController {
 public:
  explicit OptimalRobber(const WinTable& table) : table_(table) {}
  Vertex place(const Graph& g, std::span<const Vertex> cops, std::uint32_t) const override;
  Vertex move(const GameView& view) const override;
  std::string name() const override { return "optimal"; }

 private:
  const WinTable& table_;
};

/// Parses greedy | random | lookahead:<depth> | lookahead:full. The cop
/// controller must outlive the returned robber.
std::unique_ptr<RobberController> make_robber(std::string_view spec, const CopController& cops,
                                              std::uint64_t seed);

// Throws ConfigError for an unknown spec.
void validate_robber_spec(std::string_view spec);

}  // namespace copnum
