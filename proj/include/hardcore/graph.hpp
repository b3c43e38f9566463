#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardcore/error.hpp"

namespace hardcore {

// Simple undirected graph with sorted adjacency lists. Vertices are dense
// 0-based integers; subgraphs keep a label map back to the parent graph so
// results can be reported in original coordinates.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Validates simplicity: rejects self-loops, duplicate edges, out-of-range
  // endpoints.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int num_vertices() const { return n_; }
  int num_edges() const;
  std::span<const int> neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;
  bool has_edge(int u, int v) const;

  // Original vertex id; identity unless this graph was cut out of another.
  int label(int v) const;
  bool has_labels() const { return !labels_.empty(); }

  // Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

  // Structural equality (labels are metadata and not compared).
  bool operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

  void check_vertex(int v) const;

  friend Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<int> labels_;  // empty means identity
};

// Edge-list document: first non-comment line is n, then "u v" lines.
// '#' starts a comment, blank lines are skipped, duplicate edges rejected.
Graph load_graph(std::istream& in);
Graph load_graph_string(const std::string& text);
Graph load_graph_file(const std::string& path);
std::string serialize_graph(const Graph& g);

// Occupancy vector sigma in {0,1}^n.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int n);
  static Configuration from_mask(int n, std::uint64_t mask);  // n <= 64

  int size() const { return n_; }
  bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void set(int v, bool value);
  int popcount() const;
  std::uint64_t mask() const;  // n <= 64 only

  // sigma is an independent set iff no edge has both endpoints occupied.
  bool is_independent(const Graph& g) const;

  bool operator==(const Configuration& other) const {
    return n_ == other.n_ && words_ == other.words_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Partial 0/1 assignment tau on a vertex subset. Pinnings whose 1-pinned
// vertices are adjacent have zero probability and are rejected at
// construction.
class Pinning {
 public:
  Pinning() = default;  // empty pinning, valid for any graph

  static Pinning create(const Graph& g, const std::vector<std::pair<int, int>>& assignments);

  bool empty() const { return domain_.empty(); }
  std::size_t size() const { return domain_.size(); }
  bool pins(int v) const;
  int value(int v) const;  // requires pins(v)

  const std::vector<int>& domain() const { return domain_; }  // sorted Lambda
  std::vector<int> zeros() const;                             // S_0
  std::vector<int> ones() const;                              // S_1

  std::vector<std::pair<int, int>> assignments() const;

 private:
  std::vector<int> domain_;        // sorted
  std::vector<std::uint8_t> values_;  // parallel to domain_
};

// Neighbors of S outside S.
std::vector<int> boundary(const Graph& g, const std::vector<int>& s);

// Subgraph on `keep` (ascending); labels composed through g.
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

// The conditional model given tau equals the unconditioned hardcore model on
// G[V \ (S_0 u S_1 u dS_1)]; this returns that induced subgraph with labels.
Graph apply_pinning(const Graph& g, const Pinning& p);

std::vector<int> component_of(const Graph& g, int v);
bool is_connected(const Graph& g);

}  // namespace hardcore
