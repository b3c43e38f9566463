#pragma once

#include <cstdint>
#include <vector>

#include "hardcore/graph.hpp"

namespace hardcore {

// Exhaustive-sweep drivers. Unlabeled graphs are generated by vertex
// augmentation with canonical-code deduplication; n is capped at 11 so the
// upper-triangle certificate fits in 64 bits.

// All graphs with exactly n vertices and maximum degree <= max_degree, one
// representative per isomorphism class, in ascending certificate order.
std::vector<Graph> enumerate_graphs(int n, int max_degree, bool connected_only);

// Canonical upper-triangle adjacency bitstring, maximized over relabelings
// that respect the equitable degree refinement. Equal certificates iff
// isomorphic.
std::uint64_t graph_certificate(const Graph& g);

// |Aut(G)| by direct search over refinement-respecting permutations.
std::uint64_t automorphism_count(const Graph& g);

}  // namespace hardcore
