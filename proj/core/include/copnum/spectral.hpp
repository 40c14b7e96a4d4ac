#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copnum/graph.hpp"

namespace copnum {

struct Lambda2Options {
  double tol = 1e-10;
  std::uint64_t max_iterations = 2'000'000;
  std::uint64_t seed = 0x1a2b3c4dULL;  // starting vector
};

struct Lambda2Result {
  double value = 0;
  double residual = 0;  // ||A x - value x|| for the final unit vector
  std::uint64_t iterations = 0;
};

/// Second-largest adjacency eigenvalue by power iteration on A + Delta I,
/// restricted to the orthogonal complement of the top eigenvector (all-ones
/// for regular graphs) and, for bipartite graphs, of its sign-flipped twin
/// (the -lambda_1 eigenvector). Stops once the residual or the geometric
/// extrapolation of the remaining Rayleigh-quotient change drops below tol.
/// Throws PreconditionError for n < 2, ConvergenceError when the iteration
/// budget runs out.
Lambda2Result lambda2(const Graph& g, Lambda2Options options = {});

// ---------------------------------------------------------------------------

enum class PhiMode : std::uint8_t { Auto, Exact, Sampled };

struct IsoOptions {
  PhiMode mode = PhiMode::Auto;
  std::uint64_t budget = 200'000'000;  // subsets enumerated in exact mode
  std::uint64_t samples = 100'000;     // random sets in sampled mode
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

/// Phi(G, k) with the set attaining it. The ratio is boundary / size with
/// boundary = |N(S) \ S|.
struct PhiValue {
  std::uint32_t k = 0;
  std::uint64_t boundary = 0;
  std::uint64_t size = 0;
  std::vector<Vertex> set;

  double value() const { return static_cast<double>(boundary) / static_cast<double>(size); }
};

struct IsoProfile {
  bool exact = true;  // false: every value is a sampled upper bound
  std::vector<PhiValue> phi;  // phi[k-1] = Phi(G, k), k = 1 .. k_max

  const PhiValue& at(std::uint32_t k) const { return phi.at(k - 1); }
};

// Number of nonempty subsets of size <= k_max, saturating.
std::uint64_t subsets_up_to(std::size_t n, std::size_t k_max);

/// Exact profile by enumerating every subset of size <= k_max (parallel over
/// the smallest vertex) when the count fits the budget; otherwise, in Auto
/// mode, the minimum over randomly grown connected sets, flagged inexact.
/// Exact mode over budget throws BudgetExceeded. Ties keep the smaller set,
/// then the lexicographically first one.
IsoProfile isoperimetric_profile(const Graph& g, std::uint32_t k_max, IsoOptions options = {});

// |N(S) \ S| for a set of distinct vertices.
std::uint64_t vertex_boundary(const Graph& g, std::span<const Vertex> set);

// ---------------------------------------------------------------------------

struct Lemma4Report {
  std::uint64_t ball_size = 0;  // |B_r(S)|
  double cap = 0;               // n^(1 - alpha)
  double growth = 0;            // |S| (1 + beta)^r
  double rhs = 0;               // min(cap, growth)
  std::uint32_t phi_k = 0;      // floor(n^(1 - alpha))
  std::optional<double> phi;    // exact Phi(G, phi_k) when it was computed
  bool precondition_verified = false;  // 0 < beta <= exact Phi(G, phi_k)
  bool inequality_holds = false;

  // A violation with a verified precondition is a bug: the inequality is a theorem.
  bool violation() const { return precondition_verified && !inequality_holds; }
};

/// Evaluates |B_r(S)| >= min{n^(1-alpha), |S|(1+beta)^r}. The precondition
/// beta <= Phi(G, floor(n^(1-alpha))) is checked by exact enumeration when
/// it fits options.budget (pass a known exact Phi to skip the enumeration).
Lemma4Report check_lemma4(const Graph& g, std::span<const Vertex> set, std::uint32_t r, double alpha,
                          double beta, IsoOptions options = {},
                          std::optional<double> known_phi = std::nullopt);

// floor(n^(1 - alpha)) with a guard against pow rounding just below an integer.
std::uint32_t phi_argument(std::size_t n, double alpha);

// ---------------------------------------------------------------------------

enum class Lemma5Status : std::uint8_t { Holds, Fails, Inconclusive, Degenerate };
std::string_view to_string(Lemma5Status status);

struct Lemma5Report {
  std::size_t n = 0;
  std::uint32_t d = 0;
  double alpha = 0;
  double slack = 0;
  double lambda2 = 0;
  std::uint32_t k = 0;          // floor(n^(1 - alpha))
  PhiValue phi;
  bool phi_exact = false;       // false: sampled upper bound
  std::optional<double> rhs;    // (d / lambda2)^2 - 1; empty when lambda2 <= 0
  Lemma5Status status = Lemma5Status::Inconclusive;
  std::vector<std::string> notes;
};

/// Two-sided comparison of Phi(G, floor(n^(1-alpha))) against
/// (d/lambda2)^2 - 1 - slack. A sampled Phi is an upper bound, so it can
/// only show failure, never confirm the inequality. Notes record unmet
/// hypotheses (connected, regular, bipartite).
Lemma5Report lemma5_report(const Graph& g, double alpha, double slack = 1.0, IsoOptions options = {},
                           Lambda2Options spectral = {});

}  // namespace copnum
