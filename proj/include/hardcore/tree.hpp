#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hardcore/graph.hpp"

namespace hardcore {

inline constexpr std::int64_t kTreeNodeGuard = 10'000'000;
inline constexpr int kTreeEnumerationMaxVertices = 14;

// Rooted tree stored as a parent array plus derived BFS order, depths and a
// CSR children table. Vertices are 0-based; the root has parent -1.
struct RootedTree {
  int n = 0;
  int root = 0;
  std::vector<int> parent;
  std::vector<int> order;  // BFS from the root; parents precede children
  std::vector<int> depth;
  std::vector<int> child_off;  // size n+1
  std::vector<int> child_list;

  static RootedTree from_parent_array(const std::vector<int>& parent);

  std::span<const int> children(int v) const {
    return {child_list.data() + child_off[v],
            static_cast<std::size_t>(child_off[v + 1] - child_off[v])};
  }
  int num_children(int v) const { return child_off[v + 1] - child_off[v]; }
  int height() const;
  Graph to_graph() const;
};

// Text format: line 1 is n, line 2 the parent array with -1 for the root.
RootedTree load_tree(std::istream& in);
RootedTree load_tree_string(const std::string& text);
std::string serialize_tree(const RootedTree& t);

// p[v] = occupancy probability of v in the hardcore model on the subtree T_v,
// evaluated bottom-up: p_v/(1-p_v) = lambda * prod over children (1 - p_w).
struct TreeMarginals {
  std::vector<double> p;
};

TreeMarginals tree_marginals(const RootedTree& t, double lambda);

// Phi(T,lambda) = sum over v of |Psi(r,v)| = 1 + sum over non-root v of the
// product of p along the path below the root; level_sums[k] collects depth k.
struct InfluenceSum {
  double phi;
  std::vector<double> level_sums;
};

InfluenceSum root_influence_sum(const RootedTree& t, double lambda);

// T_{Delta,h}: root with Delta children, internal vertices with Delta-1,
// leaves at depth h.
RootedTree build_truncated_regular_tree(int Delta, int h);
std::int64_t truncated_tree_size(int Delta, int h);

// Phi(T_{Delta,h}) without building the tree:
//   a_k = prod_{j=1..k} F^(h-j+1)(0),  Phi = 1 + sum_k (d+1) d^(k-1) a_k.
struct TruncatedSeries {
  double phi;
  std::vector<double> a;  // a_1 .. a_h (truncated once terms stop contributing)
};

TruncatedSeries truncated_influence_series(int Delta, int h, double lambda);

// Every rooted tree up to isomorphism with <= max_n vertices where non-root
// vertices have at most max_children children and the root has at most
// root_max_children. Generated canonically (subtree multisets in sorted
// order), so each class appears exactly once.
std::vector<RootedTree> enumerate_rooted_trees(int max_n, int max_children);
std::vector<RootedTree> enumerate_rooted_trees(int max_n, int max_children, int root_max_children);

// Nested-parentheses canonical code; equal iff rooted-isomorphic.
std::string tree_canonical_code(const RootedTree& t);

}  // namespace hardcore
