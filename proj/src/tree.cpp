#include "hardcore/tree.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "hardcore/uniqueness.hpp"

namespace hardcore {

RootedTree RootedTree::from_parent_array(const std::vector<int>& parent) {
  RootedTree t;
  t.n = static_cast<int>(parent.size());
  t.parent = parent;
  t.root = -1;
  for (int v = 0; v < t.n; ++v) {
    if (parent[v] == -1) {
      if (t.root != -1) throw std::invalid_argument("parent array has two roots");
      t.root = v;
    } else if (parent[v] < 0 || parent[v] >= t.n) {
      throw std::invalid_argument("parent index out of range at vertex " + std::to_string(v));
    } else if (parent[v] == v) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " is its own parent");
    }
  }
  if (t.n == 0) throw std::invalid_argument("empty tree");
  if (t.root == -1) throw std::invalid_argument("parent array has no root");

  std::vector<int> child_count(static_cast<std::size_t>(t.n), 0);
  for (int v = 0; v < t.n; ++v)
    if (v != t.root) ++child_count[parent[v]];
  t.child_off.assign(static_cast<std::size_t>(t.n) + 1, 0);
  for (int v = 0; v < t.n; ++v) t.child_off[v + 1] = t.child_off[v] + child_count[v];
  t.child_list.resize(static_cast<std::size_t>(t.n) - 1);
  std::vector<int> cursor(t.child_off.begin(), t.child_off.end() - 1);
  for (int v = 0; v < t.n; ++v)
    if (v != t.root) t.child_list[cursor[parent[v]]++] = v;

  t.order.reserve(static_cast<std::size_t>(t.n));
  t.depth.assign(static_cast<std::size_t>(t.n), -1);
  t.order.push_back(t.root);
  t.depth[t.root] = 0;
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    int v = t.order[head];
    for (int w : t.children(v)) {
      t.depth[w] = t.depth[v] + 1;
      t.order.push_back(w);
    }
  }
  if (static_cast<int>(t.order.size()) != t.n)
    throw std::invalid_argument("parent array is not a single tree (cycle or disconnection)");
  return t;
}

int RootedTree::height() const {
  int h = 0;
  for (int d : depth) h = std::max(h, d);
  return h;
}

Graph RootedTree::to_graph() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (int v = 0; v < n; ++v)
    if (v != root) edges.emplace_back(parent[v], v);
  return Graph::from_edges(n, edges);
}

RootedTree load_tree(std::istream& in) {
  int line_no = 0;
  std::string raw;
  long long n = -1;
  std::vector<int> parent;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = raw.substr(0, raw.find('#'));
    if (s.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ls(s);
    if (n < 0) {
      if (!(ls >> n) || n <= 0) throw ParseError(line_no, "expected vertex count");
      continue;
    }
    long long x;
    while (ls >> x) {
      if (x < -1 || x >= n) throw ParseError(line_no, "parent index out of range");
      parent.push_back(static_cast<int>(x));
    }
    break;
  }
  if (n < 0) throw ParseError(line_no, "missing vertex count");
  if (static_cast<long long>(parent.size()) != n)
    throw ParseError(line_no, "expected " + std::to_string(n) + " parent entries");
  return RootedTree::from_parent_array(parent);
}

RootedTree load_tree_string(const std::string& text) {
  std::istringstream in(text);
  return load_tree(in);
}

std::string serialize_tree(const RootedTree& t) {
  std::ostringstream out;
  out << t.n << "\n";
  for (int v = 0; v < t.n; ++v) out << t.parent[v] << (v + 1 < t.n ? ' ' : '\n');
  return out.str();
}

TreeMarginals tree_marginals(const RootedTree& t, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  TreeMarginals m;
  m.p.assign(static_cast<std::size_t>(t.n), 0.0);
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    int v = *it;
    double prod = 1.0;
    for (int w : t.children(v)) prod *= 1.0 - m.p[w];
    double w = lambda * prod;
    m.p[v] = w / (1.0 + w);
  }
  return m;
}

InfluenceSum root_influence_sum(const RootedTree& t, double lambda) {
  TreeMarginals m = tree_marginals(t, lambda);
  InfluenceSum out;
  out.level_sums.assign(static_cast<std::size_t>(t.height()) + 1, 0.0);
  out.level_sums[0] = 1.0;  // self-influence
  std::vector<double> path_prod(static_cast<std::size_t>(t.n), 1.0);
  for (int v : t.order) {
    if (v == t.root) continue;
    path_prod[v] = path_prod[t.parent[v]] * m.p[v];
    out.level_sums[t.depth[v]] += path_prod[v];
  }
  out.phi = 0.0;
  for (double s : out.level_sums) out.phi += s;
  return out;
}

std::int64_t truncated_tree_size(int Delta, int h) {
  if (Delta < 3) throw std::invalid_argument("Delta must be >= 3");
  if (h < 1) throw std::invalid_argument("depth must be >= 1");
  std::int64_t size = 1, level = Delta;
  for (int k = 1; k <= h; ++k) {
    size += level;
    if (size > kTreeNodeGuard) return size;  // caller checks the guard
    level *= Delta - 1;
  }
  return size;
}

RootedTree build_truncated_regular_tree(int Delta, int h) {
  std::int64_t size = truncated_tree_size(Delta, h);
  if (size > kTreeNodeGuard)
    throw SizeLimitError("truncated regular tree exceeds the node guard (" +
                         std::to_string(kTreeNodeGuard) + ")");
  std::vector<int> parent;
  parent.reserve(static_cast<std::size_t>(size));
  parent.push_back(-1);
  int level_begin = 0, level_end = 1;
  for (int depth = 1; depth <= h; ++depth) {
    int kids = (depth == 1) ? Delta : Delta - 1;
    for (int v = level_begin; v < level_end; ++v)
      for (int c = 0; c < kids; ++c) parent.push_back(v);
    level_begin = level_end;
    level_end = static_cast<int>(parent.size());
  }
  return RootedTree::from_parent_array(parent);
}

TruncatedSeries truncated_influence_series(int Delta, int h, double lambda) {
  if (h < 1) throw std::invalid_argument("depth must be >= 1");
  const int d = Delta - 1;
  const double lc = critical_fugacity(Delta);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (lambda > lc * (1.0 + 1e-12))
    throw std::invalid_argument("series requires lambda <= lambda_c(Delta)");
  // iterates F^(t)(0) for t = 1..h
  std::vector<double> it(static_cast<std::size_t>(h) + 1, 0.0);
  for (int t = 1; t <= h; ++t) it[t] = tree_recurrence(d, lambda, it[t - 1]);
  TruncatedSeries out;
  out.phi = 1.0;
  double a = 1.0, weight = static_cast<double>(d + 1);
  for (int k = 1; k <= h; ++k) {
    a *= it[h - k + 1];  // a_k = a_{k-1} * F^(h-k+1)(0)
    out.a.push_back(a);
    double term = weight * a;
    out.phi += term;
    if (term < 1e-18 * out.phi) break;  // remaining terms cannot move the sum
    weight *= d;
  }
  return out;
}

namespace {

// Trees are generated canonically: a tree is its root plus a multiset of
// subtrees, encoded as a sequence of (size, index) pairs that is
// non-increasing lexicographically. Each isomorphism class appears once.
struct TreeEnumerator {
  int max_children = 1;
  std::vector<std::vector<std::vector<int>>> by_size;  // parent arrays, preorder, root 0

  void build(int max_n) {
    by_size.assign(static_cast<std::size_t>(max_n) + 1, {});
    if (max_n >= 1) by_size[1].push_back({-1});
    for (int s = 2; s <= max_n; ++s) {
      std::vector<int> chosen;
      collect(s - 1, s - 1, max_children, chosen, by_size[s]);
    }
  }

  // Choose a canonical subtree multiset totalling `remaining` and append the
  // assembled parent arrays to `out`.
  void collect(int remaining, int max_size, int slots, std::vector<int>& chosen,
               std::vector<std::vector<int>>& out) const {
    if (remaining == 0) {
      out.push_back(assemble(chosen));
      return;
    }
    if (slots == 0) return;
    for (int s = std::min(max_size, remaining); s >= 1; --s) {
      int start = static_cast<int>(by_size[s].size()) - 1;
      if (!chosen.empty() && size_of(chosen.back()) == s) start = index_of(chosen.back());
      for (int i = start; i >= 0; --i) {
        chosen.push_back(encode(s, i));
        collect(remaining - s, s, slots - 1, chosen, out);
        chosen.pop_back();
      }
    }
  }

  std::vector<int> assemble(const std::vector<int>& chosen) const {
    std::vector<int> parent{-1};
    for (int enc : chosen) {
      const auto& sub = by_size[size_of(enc)][index_of(enc)];
      int offset = static_cast<int>(parent.size());
      for (std::size_t j = 0; j < sub.size(); ++j)
        parent.push_back(sub[j] == -1 ? 0 : sub[j] + offset);
    }
    return parent;
  }

  static int encode(int size, int index) { return size * 1'000'000 + index; }
  static int size_of(int enc) { return enc / 1'000'000; }
  static int index_of(int enc) { return enc % 1'000'000; }
};

}  // namespace

std::vector<RootedTree> enumerate_rooted_trees(int max_n, int max_children,
                                               int root_max_children) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  if (max_n > kTreeEnumerationMaxVertices)
    throw SizeLimitError("tree enumeration limited to max_n <= " +
                         std::to_string(kTreeEnumerationMaxVertices));
  if (max_children < 1 || root_max_children < 1)
    throw std::invalid_argument("children bounds must be >= 1");

  TreeEnumerator gen;
  gen.max_children = max_children;
  gen.build(max_n);

  std::vector<RootedTree> out;
  if (root_max_children == max_children) {
    for (int s = 1; s <= max_n; ++s)
      for (const auto& parent : gen.by_size[s])
        out.push_back(RootedTree::from_parent_array(parent));
    return out;
  }
  // wider root budget: redo the top level only, subtrees stay in the
  // max_children family
  out.push_back(RootedTree::from_parent_array({-1}));
  for (int s = 2; s <= max_n; ++s) {
    std::vector<std::vector<int>> local;
    std::vector<int> chosen;
    gen.collect(s - 1, s - 1, root_max_children, chosen, local);
    for (const auto& parent : local) out.push_back(RootedTree::from_parent_array(parent));
  }
  return out;
}

std::vector<RootedTree> enumerate_rooted_trees(int max_n, int max_children) {
  return enumerate_rooted_trees(max_n, max_children, max_children);
}

std::string tree_canonical_code(const RootedTree& t) {
  std::vector<std::string> code(static_cast<std::size_t>(t.n));
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    int v = *it;
    std::vector<std::string> kids;
    for (int w : t.children(v)) kids.push_back(code[w]);
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    s += ")";
    code[v] = std::move(s);
  }
  return code[t.root];
}

}  // namespace hardcore
