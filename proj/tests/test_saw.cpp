#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hardcore/exact.hpp"
#include "hardcore/graph_gen.hpp"
#include "hardcore/saw.hpp"

using namespace hardcore;

namespace {

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

}  // namespace

TEST_CASE("acyclic graphs give back the same tree, no pins") {
  Graph p4 = load_graph_string("4\n0 1\n1 2\n2 3\n");
  for (int u = 0; u < 4; ++u) {
    SawTree saw = build_saw_tree(p4, u);
    CHECK(saw.tree.n == 4);
    CHECK(saw.leaf_pins.empty());
    CHECK(saw.origin[saw.tree.root] == u);
    auto rep = verify_saw_domination(p4, 1.0, u);
    CHECK(std::fabs(rep.graph_row_sum - rep.tree_sum) <= 1e-12);
    CHECK(rep.dominated);
  }
}

TEST_CASE("triangle") {
  Graph k3 = complete(3);
  SawTree saw = build_saw_tree(k3, 0);
  // two branches 0-1-2 and 0-2-1, each closed by a pinned copy of 0
  CHECK(saw.tree.n == 7);
  CHECK(saw.leaf_pins.size() == 2);
  CHECK(saw.tree.num_children(saw.tree.root) == 2);
  CHECK(saw.leaf_pins.ones().size() == 1);   // closing edge {0,2} > departure {0,1}
  CHECK(saw.leaf_pins.zeros().size() == 1);  // and the mirror walk pins unoccupied
  for (std::size_t v = 0; v < saw.origin.size(); ++v)
    CHECK(saw.origin[v] >= 0);

  auto rep = verify_saw_domination(k3, 1.0, 0);
  CHECK(rep.graph_row_sum == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(rep.tree_sum == doctest::Approx(2.0).epsilon(1e-12));  // pinned SAW tree, pins applied
  CHECK(rep.dominated);
}

TEST_CASE("four-cycle") {
  Graph c4 = cycle(4);
  SawTree saw = build_saw_tree(c4, 0);
  // two branches of length 3, each ending in a pinned copy of the root
  CHECK(saw.tree.n == 9);
  CHECK(saw.tree.height() == 4);
  CHECK(saw.leaf_pins.size() == 2);
  CHECK(verify_saw_domination(c4, 1.0, 0).dominated);
}

TEST_CASE("degree bound and size guard") {
  for (const Graph& g : enumerate_graphs(6, 3, true)) {
    for (int u = 0; u < g.num_vertices(); ++u) {
      SawTree saw = build_saw_tree(g, u);
      Graph tree_graph = saw.tree.to_graph();
      CHECK(tree_graph.max_degree() <= std::max(g.max_degree(), 1));
    }
  }
  CHECK_THROWS_AS(build_saw_tree(complete(11), 0), SizeLimitError);
  CHECK_THROWS_AS(verify_saw_domination(complete(3), 1.0, 7), std::out_of_range);
}

TEST_CASE("domination sweep over connected graphs up to 6 vertices") {
  // the full n <= 7 sweep is in the acceptance suite
  for (const Graph& g : enumerate_graphs(6, 3, true)) {
    bool acyclic = g.num_edges() == g.num_vertices() - 1;
    for (double lambda : {0.5, 1.0, 4.0}) {
      for (int u = 0; u < g.num_vertices(); ++u) {
        auto rep = verify_saw_domination(g, lambda, u);
        CHECK(rep.dominated);
        CHECK(rep.tree_sum >= rep.graph_row_sum - 1e-9);
        if (acyclic) CHECK(std::fabs(rep.tree_sum - rep.graph_row_sum) <= 1e-12);
      }
    }
  }
}

TEST_CASE("domination on denser-than-cubic instances") {
  for (const Graph& g : {complete(4), complete(5), cycle(5)}) {
    for (int u = 0; u < g.num_vertices(); ++u) {
      auto rep = verify_saw_domination(g, 1.0, u);
      CHECK(rep.dominated);
    }
  }
}
