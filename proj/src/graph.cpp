#include "hardcore/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <sstream>

namespace hardcore {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_)
    throw std::out_of_range("vertex index " + std::to_string(v) + " out of range [0," +
                            std::to_string(n_) + ")");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw std::invalid_argument("duplicate edge");
  }
  return g;
}

int Graph::num_edges() const {
  std::size_t deg_sum = 0;
  for (const auto& nb : adj_) deg_sum += nb.size();
  return static_cast<int>(deg_sum / 2);
}

std::span<const int> Graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::label(int v) const {
  check_vertex(v);
  return labels_.empty() ? v : labels_[v];
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;  // already lexicographic: u ascending, adj sorted
}

namespace {

// strips '#' comments; returns trimmed remainder
std::string strip_line(const std::string& raw) {
  std::string s = raw.substr(0, raw.find('#'));
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Graph load_graph(std::istream& in) {
  std::string raw;
  int line_no = 0;
  long long n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = strip_line(raw);
    if (s.empty()) continue;
    std::istringstream ls(s);
    if (n < 0) {
      if (!(ls >> n) || n < 0) throw ParseError(line_no, "expected vertex count");
      std::string extra;
      if (ls >> extra) throw ParseError(line_no, "unexpected token after vertex count");
      continue;
    }
    long long u, v;
    if (!(ls >> u >> v)) throw ParseError(line_no, "expected edge 'u v'");
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, "unexpected token after edge");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError(line_no, "vertex index out of range [0," + std::to_string(n) + ")");
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    const std::pair<int, int> key{static_cast<int>(std::min(u, v)),
                                  static_cast<int>(std::max(u, v))};
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    seen.push_back(key);
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (n < 0) throw ParseError(line_no, "missing vertex count");
  return Graph::from_edges(static_cast<int>(n), edges);
}

Graph load_graph_string(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return load_graph(in);
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.num_vertices() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

Configuration::Configuration(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {
  if (n < 0) throw std::invalid_argument("configuration size must be non-negative");
}

Configuration Configuration::from_mask(int n, std::uint64_t mask) {
  if (n > 64) throw std::invalid_argument("mask constructor limited to n <= 64");
  Configuration c(n);
  if (n > 0) c.words_[0] = (n == 64) ? mask : (mask & ((std::uint64_t{1} << n) - 1));
  return c;
}

void Configuration::set(int v, bool value) {
  if (v < 0 || v >= n_) throw std::out_of_range("configuration index out of range");
  std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if (value)
    words_[v >> 6] |= bit;
  else
    words_[v >> 6] &= ~bit;
}

int Configuration::popcount() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::uint64_t Configuration::mask() const {
  if (n_ > 64) throw std::logic_error("mask() requires n <= 64");
  return words_.empty() ? 0 : words_[0];
}

bool Configuration::is_independent(const Graph& g) const {
  if (g.num_vertices() != n_) throw std::invalid_argument("configuration size mismatch");
  for (int v = 0; v < n_; ++v) {
    if (!test(v)) continue;
    for (int w : g.neighbors(v)) {
      if (w > v) break;  // sorted; each edge checked once
      if (test(w)) return false;
    }
  }
  return true;
}

Pinning Pinning::create(const Graph& g, const std::vector<std::pair<int, int>>& assignments) {
  std::vector<std::pair<int, int>> sorted = assignments;
  std::sort(sorted.begin(), sorted.end());
  Pinning p;
  for (auto [v, val] : sorted) {
    g.check_vertex(v);
    if (val != 0 && val != 1) throw std::invalid_argument("pin value must be 0 or 1");
    if (!p.domain_.empty() && p.domain_.back() == v)
      throw std::invalid_argument("vertex pinned twice: " + std::to_string(v));
    p.domain_.push_back(v);
    p.values_.push_back(static_cast<std::uint8_t>(val));
  }
  // zero-probability pinnings (adjacent 1-pins) are rejected
  for (std::size_t i = 0; i < p.domain_.size(); ++i) {
    if (p.values_[i] != 1) continue;
    for (int w : g.neighbors(p.domain_[i])) {
      if (p.pins(w) && p.value(w) == 1 && w != p.domain_[i] && w > p.domain_[i])
        throw std::invalid_argument("invalid pinning: adjacent vertices " +
                                    std::to_string(p.domain_[i]) + " and " + std::to_string(w) +
                                    " both pinned occupied");
    }
  }
  return p;
}

bool Pinning::pins(int v) const {
  return std::binary_search(domain_.begin(), domain_.end(), v);
}

int Pinning::value(int v) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), v);
  if (it == domain_.end() || *it != v)
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not pinned");
  return values_[static_cast<std::size_t>(it - domain_.begin())];
}

std::vector<int> Pinning::zeros() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (values_[i] == 0) out.push_back(domain_[i]);
  return out;
}

std::vector<int> Pinning::ones() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (values_[i] == 1) out.push_back(domain_[i]);
  return out;
}

std::vector<std::pair<int, int>> Pinning::assignments() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < domain_.size(); ++i) out.emplace_back(domain_[i], values_[i]);
  return out;
}

std::vector<int> boundary(const Graph& g, const std::vector<int>& s) {
  std::vector<char> in_s(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int v : s) {
    g.check_vertex(v);
    in_s[v] = 1;
  }
  std::vector<char> hit(in_s.size(), 0);
  for (int v : s)
    for (int w : g.neighbors(v))
      if (!in_s[w]) hit[w] = 1;
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  std::vector<int> new_id(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    g.check_vertex(keep[i]);
    if (new_id[keep[i]] != -1) throw std::invalid_argument("duplicate vertex in subset");
    new_id[keep[i]] = static_cast<int>(i);
  }
  if (!std::is_sorted(keep.begin(), keep.end()))
    throw std::invalid_argument("subset must be ascending");
  Graph out(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (int w : g.neighbors(keep[i]))
      if (new_id[w] != -1) out.adj_[i].push_back(new_id[w]);
  }
  out.labels_.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) out.labels_[i] = g.label(keep[i]);
  return out;
}

Graph apply_pinning(const Graph& g, const Pinning& p) {
  std::vector<char> removed(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int v : p.domain()) removed[v] = 1;
  for (int v : boundary(g, p.ones())) removed[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!removed[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

std::vector<int> component_of(const Graph& g, int v) {
  g.check_vertex(v);
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<int> stack{v}, out;
  seen[v] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (int w : g.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() == 0) return true;
  return static_cast<int>(component_of(g, 0).size()) == g.num_vertices();
}

}  // namespace hardcore
