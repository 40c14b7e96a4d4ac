#pragma once

#include <cstdint>
#include <optional>

namespace copnum {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// Frankl's lower bound (1/g)(delta - 1)^floor((g - 1)/4); 0 without a cycle.
double frankl_lower(std::uint32_t delta, std::optional<std::uint32_t> girth);

// n delta^(1 - floor(g/4)); the upper bound on c(G) is (eps + o(1)) times this.
double thm1_upper_coeff(std::uint64_t n, std::uint32_t delta, std::uint32_t girth);

// The constant a of the cage bound, selected by g mod 4.
Rational cage_constant(std::uint32_t girth);

// True for p^k with p an odd prime, k >= 1.
bool is_odd_prime_power(std::uint64_t q);

/// 2 d q^((3/4) g - a). Throws PreconditionError unless q is an odd prime
/// power with d <= q.
double cage_upper(std::uint32_t d, std::uint32_t girth, std::uint64_t q);

// exp(-k^2 / (2 (E + k/3))).
double chernoff_tail(double expected, double k);

// Exponent c in k = E^c used for the concentration check.
inline constexpr double kChernoffExponent = 0.75;

struct BoundsInput {
  std::uint64_t n = 0;
  std::uint32_t delta = 0;
  std::optional<std::uint32_t> girth;  // empty: acyclic
  std::uint32_t d = 0;
  std::optional<std::uint64_t> q;
  double epsilon = 1.0;
};

struct BoundEvaluation {
  double frankl_lower = 0;
  std::uint64_t frankl_ceiling = 0;
  std::optional<double> thm1_upper_coeff;  // needs a finite girth
  std::optional<double> thm1_upper;        // epsilon * coefficient
  std::optional<Rational> cage_a;
  std::optional<double> cage_upper;
  double expected_cops = 0;          // E|C| = n eps delta^-t for the thm1 density
  double chernoff_k = 0;             // E^0.75
  double chernoff_tail = 0;          // at (E, E^0.75)
};

/// All closed-form evaluations for one parameter set. The cage bound is
/// computed only when q is given (and then validated).
BoundEvaluation evaluate_bounds(const BoundsInput& in);

}  // namespace copnum
