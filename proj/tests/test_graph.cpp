#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "hardcore/graph.hpp"
#include "hardcore/graph_gen.hpp"

using namespace hardcore;

TEST_CASE("edge-list parsing") {
  Graph k2 = load_graph_string("2\n0 1\n");
  CHECK(k2.num_vertices() == 2);
  CHECK(k2.num_edges() == 1);
  CHECK(k2.has_edge(0, 1));

  Graph p3 = load_graph_string("3\n0 1\n1 2\n");
  CHECK(p3.num_vertices() == 3);
  CHECK(p3.degree(1) == 2);

  // comments and blank lines
  Graph g = load_graph_string("# path\n3 # n\n\n0 1\n1 2 # last\n");
  CHECK(g == p3);

  CHECK_THROWS_WITH_AS(load_graph_string("3\n0 0\n"), "line 2: self-loop at vertex 0",
                       ParseError);
  CHECK_THROWS_AS(load_graph_string("2\n0 3\n"), ParseError);
  CHECK_THROWS_AS(load_graph_string("2\n0 1\n1 0\n"), ParseError);  // duplicate, both orders
  CHECK_THROWS_AS(load_graph_string("2\n0 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(load_graph_string(""), ParseError);
  CHECK_THROWS_AS(load_graph_string("x\n"), ParseError);
  CHECK_THROWS_AS(load_graph_string("2\n0\n"), ParseError);

  try {
    load_graph_string("3\n0 1\n\n# c\n2 2\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("serialize is a left inverse of load") {
  for (const Graph& g : enumerate_graphs(5, 4, false)) {
    Graph back = load_graph_string(serialize_graph(g));
    CHECK(back == g);
  }
  CHECK(serialize_graph(load_graph_string("3\n1 2\n0 1\n")) == "3\n0 1\n1 2\n");
}

TEST_CASE("boundary") {
  Graph k2 = load_graph_string("2\n0 1\n");
  CHECK(boundary(k2, {0}) == std::vector<int>{1});
  Graph p3 = load_graph_string("3\n0 1\n1 2\n");
  CHECK(boundary(p3, {1}) == std::vector<int>{0, 2});
  CHECK(boundary(p3, {}) == std::vector<int>{});
  CHECK_THROWS_AS(boundary(p3, {7}), std::out_of_range);

  // dS never meets S
  for (const Graph& g : enumerate_graphs(5, 4, true)) {
    for (std::uint32_t mask = 0; mask < (1u << g.num_vertices()); ++mask) {
      std::vector<int> s;
      for (int v = 0; v < g.num_vertices(); ++v)
        if ((mask >> v) & 1) s.push_back(v);
      auto ds = boundary(g, s);
      for (int v : ds) CHECK(!std::binary_search(s.begin(), s.end(), v));
    }
  }
}

TEST_CASE("configurations") {
  Graph p3 = load_graph_string("3\n0 1\n1 2\n");
  CHECK(Configuration::from_mask(3, 0b101).is_independent(p3));
  CHECK(!Configuration::from_mask(3, 0b011).is_independent(p3));
  Configuration c(3);
  c.set(0, true);
  c.set(2, true);
  CHECK(c == Configuration::from_mask(3, 0b101));
  CHECK(c.popcount() == 2);
}

TEST_CASE("pinning validity") {
  Graph p3 = load_graph_string("3\n0 1\n1 2\n");
  Pinning ok = Pinning::create(p3, {{0, 1}, {2, 1}});
  CHECK(ok.ones() == std::vector<int>{0, 2});
  CHECK(ok.zeros().empty());
  CHECK(ok.pins(0));
  CHECK(!ok.pins(1));
  CHECK(ok.value(2) == 1);

  CHECK_THROWS_AS(Pinning::create(p3, {{0, 1}, {1, 1}}), std::invalid_argument);  // adjacent ones
  CHECK_THROWS_AS(Pinning::create(p3, {{0, 1}, {0, 0}}), std::invalid_argument);  // pinned twice
  CHECK_THROWS_AS(Pinning::create(p3, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Pinning::create(p3, {{5, 1}}), std::out_of_range);
  CHECK_NOTHROW(Pinning::create(p3, {{0, 1}, {1, 0}}));  // 1 next to 0 is fine
}

TEST_CASE("apply_pinning removes the pinned and blocked vertices") {
  Graph k2 = load_graph_string("2\n0 1\n");
  Graph empty = apply_pinning(k2, Pinning::create(k2, {{0, 1}}));
  CHECK(empty.num_vertices() == 0);  // vertex 1 went with the boundary of S_1

  Graph p3 = load_graph_string("3\n0 1\n1 2\n");
  Graph two = apply_pinning(p3, Pinning::create(p3, {{1, 0}}));
  CHECK(two.num_vertices() == 2);
  CHECK(two.num_edges() == 0);
  CHECK(two.label(0) == 0);
  CHECK(two.label(1) == 2);

  Graph one = apply_pinning(p3, Pinning::create(p3, {{0, 1}}));
  CHECK(one.num_vertices() == 1);
  CHECK(one.label(0) == 2);

  // isolated vertices are retained
  Graph p4 = load_graph_string("4\n0 1\n1 2\n2 3\n");
  Graph rest = apply_pinning(p4, Pinning::create(p4, {{1, 1}}));
  CHECK(rest.num_vertices() == 1);
  CHECK(rest.label(0) == 3);
}

TEST_CASE("label maps compose through nested subgraphs") {
  Graph p5 = load_graph_string("5\n0 1\n1 2\n2 3\n3 4\n");
  Graph a = induced_subgraph(p5, {1, 2, 3, 4});
  Graph b = induced_subgraph(a, {1, 2});  // vertices 2,3 of p5
  CHECK(b.label(0) == 2);
  CHECK(b.label(1) == 3);
}

TEST_CASE("components and connectivity") {
  Graph g = load_graph_string("5\n0 1\n2 3\n");
  CHECK(!is_connected(g));
  CHECK(component_of(g, 0) == std::vector<int>{0, 1});
  CHECK(component_of(g, 4) == std::vector<int>{4});
  CHECK(is_connected(load_graph_string("3\n0 1\n1 2\n")));
}

TEST_CASE("graph enumeration matches published counts") {
  // all graphs per vertex count: 1, 2, 4, 11, 34, 156; connected: 1, 1, 2, 6, 21, 112
  const int all_counts[] = {1, 2, 4, 11, 34, 156};
  const int connected_counts[] = {1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) {
    CHECK(static_cast<int>(enumerate_graphs(n, n - 1 > 0 ? n - 1 : 1, false).size()) ==
          all_counts[n - 1]);
    CHECK(static_cast<int>(enumerate_graphs(n, n - 1 > 0 ? n - 1 : 1, true).size()) ==
          connected_counts[n - 1]);
  }
}

TEST_CASE("enumeration is consistent with labeled counting") {
  // sum over classes of n!/|Aut| must give 2^C(n,2)
  for (int n : {4, 5}) {
    double labeled = 0.0;
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    for (const Graph& g : enumerate_graphs(n, n - 1, false))
      labeled += factorial / static_cast<double>(automorphism_count(g));
    CHECK(labeled == doctest::Approx(std::pow(2.0, n * (n - 1) / 2)).epsilon(1e-12));
  }
}

TEST_CASE("degree-bounded enumeration") {
  for (const Graph& g : enumerate_graphs(7, 3, false)) CHECK(g.max_degree() <= 3);
  // distinct certificates
  auto graphs = enumerate_graphs(6, 3, false);
  for (std::size_t i = 1; i < graphs.size(); ++i)
    CHECK(graph_certificate(graphs[i - 1]) != graph_certificate(graphs[i]));
  // K4 and C4 are found among the connected cubic-bounded graphs on 4 vertices
  auto c4 = enumerate_graphs(4, 3, true);
  bool has_k4 = false, has_c4 = false;
  for (const Graph& g : c4) {
    if (g.num_edges() == 6) has_k4 = true;
    if (g.num_edges() == 4 && g.max_degree() == 2) has_c4 = true;
  }
  CHECK(has_k4);
  CHECK(has_c4);
}
