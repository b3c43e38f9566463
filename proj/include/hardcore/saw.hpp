#pragma once

#include <cstdint>
#include <vector>

#include "hardcore/graph.hpp"
#include "hardcore/tree.hpp"

namespace hardcore {

inline constexpr std::int64_t kSawNodeGuard = 1'000'000;
inline constexpr int kSawExactMaxVertices = 16;

// Tree of self-avoiding walks from u. A walk that closes a cycle at a visited
// vertex w ends in a leaf copy of w, pinned occupied when the closing edge is
// larger than the edge through which the walk left w (lexicographic order on
// sorted endpoint pairs), unoccupied when smaller.
struct SawTree {
  RootedTree tree;
  Pinning leaf_pins;        // on tree vertices; only cycle-closing leaf copies
  std::vector<int> origin;  // tree vertex -> G vertex; origin[root] = u
};

SawTree build_saw_tree(const Graph& g, int u, std::int64_t max_nodes = kSawNodeGuard);

struct SawDominationReport {
  double graph_row_sum;  // sum over v of |Psi_G(u, v)|
  double tree_sum;       // same sum for the SAW tree root, pins applied
  bool dominated;        // tree_sum >= graph_row_sum - 1e-9
  int tree_nodes;
  int pinned_leaves;
};

// Both sides computed exactly: the graph row by enumeration, the tree side by
// applying the leaf pins and running the tree recursion on the root's
// residual component.
SawDominationReport verify_saw_domination(const Graph& g, double lambda, int u);

}  // namespace hardcore
