#include "copnum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copnum/error.hpp"
#include "copnum/graph.hpp"

namespace copnum {

double frankl_lower(std::uint32_t delta, std::optional<std::uint32_t> girth) {
  if (!girth || delta == 0) return 0.0;
  const double g = static_cast<double>(*girth);
  return std::pow(static_cast<double>(delta - 1), static_cast<double>((*girth - 1) / 4)) / g;
}

double thm1_upper_coeff(std::uint64_t n, std::uint32_t delta, std::uint32_t girth) {
  const double exponent = 1.0 - static_cast<double>(girth / 4);
  return static_cast<double>(n) * std::pow(static_cast<double>(delta), exponent);
}

Rational cage_constant(std::uint32_t girth) {
  switch (girth % 4) {
    case 0: return {4, 1};
    case 1: return {11, 4};
    case 2: return {7, 2};
    default: return {13, 4};
  }
}

bool is_odd_prime_power(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) return false;
  for (std::uint64_t p = 3; p * p <= q; p += 2) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    return q == 1;
  }
  return true;  // q itself is prime
}

double cage_upper(std::uint32_t d, std::uint32_t girth, std::uint64_t q) {
  if (!is_odd_prime_power(q)) {
    throw PreconditionError("cage bound needs an odd prime power q, got " + std::to_string(q));
  }
  if (d > q) throw PreconditionError("cage bound needs d <= q");
  const Rational a = cage_constant(girth);
  // (3/4) g - a = (3 g den - 4 num) / (4 den)
  const double exponent = static_cast<double>(3 * static_cast<std::int64_t>(girth) * a.den - 4 * a.num) /
                          static_cast<double>(4 * a.den);
  return 2.0 * static_cast<double>(d) * std::pow(static_cast<double>(q), exponent);
}

double chernoff_tail(double expected, double k) {
  return std::exp(-(k * k) / (2.0 * (expected + k / 3.0)));
}

BoundEvaluation evaluate_bounds(const BoundsInput& in) {
  if (in.girth && *in.girth < 3) throw PreconditionError("girth must be at least 3");
  BoundEvaluation out;
  out.frankl_lower = frankl_lower(in.delta, in.girth);
  out.frankl_ceiling = static_cast<std::uint64_t>(std::ceil(out.frankl_lower - 1e-12));
  if (in.girth) {
    out.thm1_upper_coeff = thm1_upper_coeff(in.n, in.delta, *in.girth);
    out.thm1_upper = in.epsilon * *out.thm1_upper_coeff;
  }
  if (in.q) {
    if (!in.girth) throw PreconditionError("cage bound needs a finite girth");
    out.cage_a = cage_constant(*in.girth);
    out.cage_upper = cage_upper(in.d, *in.girth, *in.q);
  }
  const auto t = decompose_girth(in.girth).t;
  const double p = std::min(1.0, in.epsilon * std::pow(static_cast<double>(in.delta), -static_cast<double>(t)));
  out.expected_cops = static_cast<double>(in.n) * p;
  out.chernoff_k = std::pow(out.expected_cops, kChernoffExponent);
  out.chernoff_tail = chernoff_tail(out.expected_cops, out.chernoff_k);
  return out;
}

}  // namespace copnum
