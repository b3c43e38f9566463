#include "hardcore/graph_gen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>

namespace hardcore {

namespace {

constexpr int kMaxN = 11;  // n*(n-1)/2 <= 55 certificate bits

struct SmallGraph {
  int n = 0;
  std::array<std::uint16_t, kMaxN> adj{};  // neighbor bitmasks

  bool edge(int u, int v) const { return (adj[u] >> v) & 1; }
  int degree(int v) const { return std::popcount(adj[v]); }
};

SmallGraph to_small(const Graph& g) {
  if (g.num_vertices() > kMaxN) throw SizeLimitError("graph enumeration limited to n <= 11");
  SmallGraph s;
  s.n = g.num_vertices();
  for (int v = 0; v < s.n; ++v)
    for (int w : g.neighbors(v)) s.adj[v] |= static_cast<std::uint16_t>(1u << w);
  return s;
}

Graph to_graph(const SmallGraph& s) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < s.n; ++u)
    for (int v = u + 1; v < s.n; ++v)
      if (s.edge(u, v)) edges.emplace_back(u, v);
  return Graph::from_edges(s.n, edges);
}

// Equitable refinement: classes keyed by degree, then repeatedly by the
// multiset of neighbor class ids. Class order is isomorphism-invariant.
std::vector<std::vector<int>> refine_classes(const SmallGraph& g) {
  std::vector<int> id(static_cast<std::size_t>(g.n));
  for (int v = 0; v < g.n; ++v) id[v] = g.degree(v);
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> keys(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> k{id[v]};
      for (int w = 0; w < g.n; ++w)
        if (g.edge(v, w)) k.push_back(id[w]);
      std::sort(k.begin() + 1, k.end());
      keys[v] = {std::move(k), v};
    }
    std::vector<std::pair<std::vector<int>, int>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> next(static_cast<std::size_t>(g.n));
    int classes = 0;
    for (int i = 0; i < g.n; ++i) {
      if (i > 0 && sorted[i].first != sorted[i - 1].first) ++classes;
      next[sorted[i].second] = classes;
    }
    bool stable = true;
    for (int v = 0; v < g.n && stable; ++v)
      for (int w = 0; w < g.n; ++w)
        if (id[v] == id[w] && next[v] != next[w]) {
          stable = false;
          break;
        }
    id = next;
    if (stable) break;
  }
  int num_classes = *std::max_element(id.begin(), id.end()) + 1;
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(num_classes));
  for (int v = 0; v < g.n; ++v) classes[id[v]].push_back(v);
  return classes;
}

std::uint64_t code_of_perm(const SmallGraph& g, const std::vector<int>& perm) {
  std::uint64_t code = 0;
  for (int j = 1; j < g.n; ++j)
    for (int i = 0; i < j; ++i) code = (code << 1) | (g.edge(perm[i], perm[j]) ? 1u : 0u);
  return code;
}

// Visit all permutations that keep each refinement class in its block.
template <class F>
void for_each_class_perm(const std::vector<std::vector<int>>& classes, F&& visit) {
  std::vector<std::vector<int>> perms = classes;  // per-class arrangement, starts sorted
  std::vector<int> flat;
  for (;;) {
    flat.clear();
    for (const auto& p : perms) flat.insert(flat.end(), p.begin(), p.end());
    visit(flat);
    std::size_t k = perms.size();
    while (k > 0 && !std::next_permutation(perms[k - 1].begin(), perms[k - 1].end())) --k;
    if (k == 0) break;
  }
}

std::uint64_t certificate(const SmallGraph& g) {
  auto classes = refine_classes(g);
  std::uint64_t best = 0;
  bool first = true;
  for_each_class_perm(classes, [&](const std::vector<int>& perm) {
    std::uint64_t c = code_of_perm(g, perm);
    if (first || c > best) {
      best = c;
      first = false;
    }
  });
  return best;
}

bool small_connected(const SmallGraph& g) {
  if (g.n == 0) return true;
  std::uint16_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint16_t next = 0;
    for (int v = 0; v < g.n; ++v)
      if ((frontier >> v) & 1) next |= g.adj[v];
    frontier = next & static_cast<std::uint16_t>(~seen);
    seen |= next;
  }
  return seen == (1u << g.n) - 1;
}

}  // namespace

std::uint64_t graph_certificate(const Graph& g) { return certificate(to_small(g)); }

std::uint64_t automorphism_count(const Graph& g) {
  SmallGraph s = to_small(g);
  auto classes = refine_classes(s);
  std::vector<int> base;  // automorphisms permute within classes
  for (const auto& c : classes) base.insert(base.end(), c.begin(), c.end());
  std::vector<int> phi(static_cast<std::size_t>(s.n));
  std::uint64_t count = 0;
  for_each_class_perm(classes, [&](const std::vector<int>& flat) {
    for (int i = 0; i < s.n; ++i) phi[base[i]] = flat[i];
    for (int u = 0; u < s.n; ++u)
      for (int v = u + 1; v < s.n; ++v)
        if (s.edge(u, v) != s.edge(phi[u], phi[v])) return;
    ++count;
  });
  return count;
}

std::vector<Graph> enumerate_graphs(int n, int max_degree, bool connected_only) {
  if (n < 1) throw std::invalid_argument("enumerate_graphs requires n >= 1");
  if (n > kMaxN) throw SizeLimitError("graph enumeration limited to n <= 11");
  // level k holds certificates of all Delta-bounded graphs on k vertices;
  // deleting a vertex preserves the degree bound, so augmentation is complete
  std::map<std::uint64_t, SmallGraph> level;
  SmallGraph single;
  single.n = 1;
  level.emplace(0, single);
  for (int k = 2; k <= n; ++k) {
    std::map<std::uint64_t, SmallGraph> next;
    for (const auto& [cert, parent] : level) {
      (void)cert;
      for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        if (std::popcount(mask) > max_degree) continue;
        bool ok = true;
        for (int v = 0; v < k - 1 && ok; ++v)
          if ((mask >> v) & 1 && parent.degree(v) + 1 > max_degree) ok = false;
        if (!ok) continue;
        SmallGraph child = parent;
        child.n = k;
        child.adj[k - 1] = static_cast<std::uint16_t>(mask);
        for (int v = 0; v < k - 1; ++v)
          if ((mask >> v) & 1) child.adj[v] |= static_cast<std::uint16_t>(1u << (k - 1));
        next.emplace(certificate(child), child);
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (const auto& [cert, sg] : level) {
    (void)cert;
    if (connected_only && !small_connected(sg)) continue;
    out.push_back(to_graph(sg));
  }
  return out;
}

}  // namespace hardcore
