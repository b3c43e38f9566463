#include "hardcore/saw.hpp"

#include <algorithm>
#include <utility>

#include "hardcore/exact.hpp"

namespace hardcore {

namespace {

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct SawBuilder {
  const Graph& g;
  std::int64_t max_nodes;
  std::vector<int> parent;                     // tree structure, preorder
  std::vector<int> origin;                     // tree vertex -> graph vertex
  std::vector<std::pair<int, int>> pins;       // (tree vertex, value)
  std::vector<char> on_path;                   // graph vertex -> walking through it
  std::vector<int> successor;                  // next graph vertex on the current walk

  SawBuilder(const Graph& graph, std::int64_t guard)
      : g(graph),
        max_nodes(guard),
        on_path(static_cast<std::size_t>(graph.num_vertices()), 0),
        successor(static_cast<std::size_t>(graph.num_vertices()), -1) {}

  int new_node(int par, int gv) {
    if (static_cast<std::int64_t>(parent.size()) >= max_nodes)
      throw SizeLimitError("self-avoiding-walk tree exceeds the node guard (" +
                           std::to_string(max_nodes) + ")");
    parent.push_back(par);
    origin.push_back(gv);
    return static_cast<int>(parent.size()) - 1;
  }

  void extend(int node, int gv, int pred) {
    on_path[gv] = 1;
    for (int w : g.neighbors(gv)) {
      if (w == pred) continue;
      if (on_path[w]) {
        // cycle closes at w: pinned leaf copy, spin decided by the edge order
        int leaf = new_node(node, w);
        bool occupied = edge_key(gv, w) > edge_key(w, successor[w]);
        pins.emplace_back(leaf, occupied ? 1 : 0);
      } else {
        int child = new_node(node, w);
        successor[gv] = w;
        extend(child, w, gv);
      }
    }
    on_path[gv] = 0;
  }
};

}  // namespace

SawTree build_saw_tree(const Graph& g, int u, std::int64_t max_nodes) {
  g.check_vertex(u);
  SawBuilder b(g, max_nodes);
  int root = b.new_node(-1, u);
  b.extend(root, u, -1);
  SawTree out;
  out.tree = RootedTree::from_parent_array(b.parent);
  out.origin = std::move(b.origin);
  out.leaf_pins = Pinning::create(out.tree.to_graph(), b.pins);
  return out;
}

SawDominationReport verify_saw_domination(const Graph& g, double lambda, int u) {
  if (g.num_vertices() > kSawExactMaxVertices)
    throw SizeLimitError("domination check needs exact row sums; limited to n <= " +
                         std::to_string(kSawExactMaxVertices));
  SawDominationReport report;
  report.graph_row_sum = influence_row_sum(g, lambda, u);

  SawTree saw = build_saw_tree(g, u);
  report.tree_nodes = saw.tree.n;
  report.pinned_leaves = static_cast<int>(saw.leaf_pins.size());

  // pinned and blocked copies have constant spin and contribute no influence;
  // what remains of the root's component is a plain tree
  Graph residual = apply_pinning(saw.tree.to_graph(), saw.leaf_pins);
  int root_here = -1;
  for (int v = 0; v < residual.num_vertices(); ++v)
    if (residual.label(v) == saw.tree.root) root_here = v;
  if (root_here == -1) throw std::logic_error("SAW root lost to pinning");

  std::vector<int> comp = component_of(residual, root_here);
  Graph comp_graph = induced_subgraph(residual, comp);
  int comp_root = -1;
  std::vector<int> parent(static_cast<std::size_t>(comp_graph.num_vertices()), -2);
  for (int v = 0; v < comp_graph.num_vertices(); ++v)
    if (comp_graph.label(v) == saw.tree.root) comp_root = v;
  // BFS orientation away from the root
  std::vector<int> queue{comp_root};
  parent[comp_root] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int w : comp_graph.neighbors(v))
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  RootedTree residual_tree = RootedTree::from_parent_array(parent);
  report.tree_sum = root_influence_sum(residual_tree, lambda).phi;
  report.dominated = report.tree_sum >= report.graph_row_sum - 1e-9;
  return report;
}

}  // namespace hardcore
