#pragma once

#include <cstdint>
#include <vector>

#include "copnum/graph.hpp"

namespace copnum::verify {

// Canonical code of a graph with at most 11 vertices: the largest
// upper-triangle adjacency bit string over all relabelings that respect a
// color-refinement partition. Equal codes iff isomorphic.
std::uint64_t canonical_code(const Graph& g);

/// One representative of every isomorphism class of connected graphs on n
/// vertices (1 <= n <= 9), grown by attaching a vertex to every nonempty
/// subset of each connected graph on n - 1 vertices.
std::vector<Graph> connected_graphs(std::size_t n);

}  // namespace copnum::verify
