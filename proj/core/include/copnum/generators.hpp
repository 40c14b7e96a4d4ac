#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "copnum/graph.hpp"

namespace copnum {

struct LpsParams {
  std::uint32_t p = 5;
  std::uint32_t q = 13;
};

/// Verification record emitted with every LPS construction. Properties are
/// measured on the built graph, never assumed.
struct LpsRecord {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  int legendre_p_over_q = 0;   // (p/q); -1 selects the bipartite PGL(2, q) case
  int legendre_q_over_p = 0;   // (q/p)
  std::uint64_t expected_n = 0;  // q(q^2 - 1)
  std::uint32_t expected_d = 0;  // p + 1
  double girth_lower_bound = 0;  // 4 ln q / ln p - 1
  std::uint32_t girth_floor = 0;  // ceil(girth_lower_bound)
  bool q_at_most_exp_p1 = false;  // q <= e^(p+1)

  std::uint64_t n = 0;
  bool regular = false;
  bool connected = false;
  bool bipartite = false;
  std::optional<std::uint32_t> girth;

  bool verified() const noexcept {
    return n == expected_n && regular && connected && bipartite && girth &&
           *girth >= girth_floor;
  }
};

struct LpsGraph {
  Graph graph;
  LpsRecord record;
};

/// Cayley graph of PGL(2, q) with the p + 1 quaternion generators.
/// Requires distinct primes p, q = 1 mod 4, (p/q) = -1 and q > 2 sqrt(p).
LpsGraph lps_graph(LpsParams params);

bool is_prime(std::uint64_t x);

// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
int legendre(std::int64_t a, std::uint64_t p);

/// Named test graphs with fixed canonical labelings:
///   path(n) cycle(n) complete(n) complete_bipartite(a,b) hypercube(k)
///   petersen heawood mcgee tutte_coxeter random_tree(n,seed)
Graph named_graph(std::string_view name);

/// Minimum order of a d-regular graph with girth >= g (ball counting).
std::uint64_t moore_bound(std::uint32_t d, std::uint32_t g);

/// Uniform pairing-model sample conditioned on simplicity, connectivity and
/// girth >= g_min, by rejection. Partial pairings that already violate a
/// condition are rejected early, which leaves the accepted distribution
/// unchanged. Throws PreconditionError on d*n odd or n below the Moore
/// bound, GenerationFailure after max_attempts.
Graph random_regular_girth(std::uint32_t d, std::uint32_t n, std::uint32_t g_min,
                           std::uint64_t seed, std::uint64_t max_attempts = 50'000'000);

}  // namespace copnum
