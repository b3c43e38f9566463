#include "hardcore/exact.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hardcore {

namespace {

void check_enumerable(const Graph& g) {
  if (g.num_vertices() > kEnumerationMaxVertices)
    throw SizeLimitError("exhaustive enumeration limited to n <= " +
                         std::to_string(kEnumerationMaxVertices) + " (got n = " +
                         std::to_string(g.num_vertices()) + ")");
}

std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint64_t> m(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int w : g.neighbors(v)) m[v] |= std::uint64_t{1} << w;
  return m;
}

// forced[v]: -1 free, 0/1 pinned. Recursion depth <= 30.
template <class F>
void enumerate_rec(int v, int n, std::uint64_t mask, std::uint64_t blocked,
                   const std::vector<std::uint64_t>& nbr, const signed char* forced, F&& visit) {
  if (v == n) {
    visit(mask);
    return;
  }
  const bool can_occupy = ((blocked >> v) & 1) == 0;
  const signed char f = forced ? forced[v] : static_cast<signed char>(-1);
  if (f != 1) enumerate_rec(v + 1, n, mask, blocked, nbr, forced, visit);
  if (f != 0 && can_occupy)
    enumerate_rec(v + 1, n, mask | (std::uint64_t{1} << v), blocked | nbr[v], nbr, forced, visit);
}

std::vector<signed char> forced_from_pinning(const Graph& g, const Pinning& p) {
  std::vector<signed char> forced(static_cast<std::size_t>(g.num_vertices()), -1);
  for (auto [v, val] : p.assignments()) forced[v] = static_cast<signed char>(val);
  return forced;
}

// Free coordinates: unpinned vertices with no occupied-pinned neighbor.
std::vector<int> free_vertices(const Graph& g, const Pinning& p) {
  std::vector<char> out_of_play(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int v : p.domain()) out_of_play[v] = 1;
  for (int v : boundary(g, p.ones())) out_of_play[v] = 1;
  std::vector<int> a;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!out_of_play[v]) a.push_back(v);
  return a;
}

std::vector<double> power_table(double lambda, int n) {
  std::vector<double> pw(static_cast<std::size_t>(n) + 1);
  pw[0] = 1.0;
  for (int k = 1; k <= n; ++k) pw[k] = pw[k - 1] * lambda;
  return pw;
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

bool is_forest(const Graph& g) {
  // acyclic iff every component has |E| = |V| - 1; check globally via union-find
  std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges()) {
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;
    parent[ru] = rv;
  }
  return true;
}

double log1p_exp(double x) {  // log(1 + e^x), stable
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// log Z for forests by leaf elimination: per vertex track log of the two
// restricted partition functions (v occupied / v unoccupied) of its subtree.
double forest_log_partition(const Graph& g, double lambda) {
  const int n = g.num_vertices();
  const double log_lambda = std::log(lambda);
  std::vector<double> log_in(static_cast<std::size_t>(n), 0.0),
      log_out(static_cast<std::size_t>(n), 0.0);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  for (int root = 0; root < n; ++root) {
    if (done[root]) continue;
    // iterative post-order over the component containing root
    std::vector<std::pair<int, int>> stack{{root, -1}};
    std::vector<std::pair<int, int>> order;
    while (!stack.empty()) {
      auto [v, par] = stack.back();
      stack.pop_back();
      done[v] = 1;
      order.emplace_back(v, par);
      for (int w : g.neighbors(v))
        if (w != par) stack.emplace_back(w, v);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto [v, par] = *it;
      double in = log_lambda, out = 0.0;
      for (int w : g.neighbors(v)) {
        if (w == par) continue;
        in += log_out[w];
        out += log_out[w] + log1p_exp(log_in[w] - log_out[w]);
      }
      log_in[v] = in;
      log_out[v] = out;
    }
    total += log_out[root] + log1p_exp(log_in[root] - log_out[root]);
  }
  return total;
}

}  // namespace

void for_each_independent_set(const Graph& g, const std::function<void(std::uint64_t)>& visit) {
  check_enumerable(g);
  auto nbr = neighbor_masks(g);
  enumerate_rec(0, g.num_vertices(), 0, 0, nbr, nullptr, visit);
}

void for_each_independent_set(const Graph& g, const Pinning& p,
                              const std::function<void(std::uint64_t)>& visit) {
  check_enumerable(g);
  auto nbr = neighbor_masks(g);
  auto forced = forced_from_pinning(g, p);
  enumerate_rec(0, g.num_vertices(), 0, 0, nbr, forced.data(), visit);
}

std::vector<Configuration> enumerate_independent_sets(const Graph& g) {
  std::vector<Configuration> out;
  for_each_independent_set(
      g, [&](std::uint64_t m) { out.push_back(Configuration::from_mask(g.num_vertices(), m)); });
  return out;
}

std::uint64_t count_independent_sets(const Graph& g) {
  std::uint64_t c = 0;
  for_each_independent_set(g, [&](std::uint64_t) { ++c; });
  return c;
}

std::vector<double> independence_polynomial(const Graph& g) {
  std::vector<double> coeff(static_cast<std::size_t>(g.num_vertices()) + 1, 0.0);
  for_each_independent_set(
      g, [&](std::uint64_t m) { coeff[static_cast<std::size_t>(std::popcount(m))] += 1.0; });
  return coeff;
}

PartitionValue partition_function(const Graph& g, double lambda) {
  check_lambda(lambda);
  const int n = g.num_vertices();
  double log_z;
  if (n <= kEnumerationMaxVertices) {
    auto coeff = independence_polynomial(g);
    const double log_lambda = std::log(lambda);
    double shift = 0.0;  // the empty set contributes log 1 = 0, so the max is >= 0
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      if (coeff[k] == 0.0) continue;
      shift = std::max(shift, std::log(coeff[k]) + static_cast<double>(k) * log_lambda);
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      if (coeff[k] == 0.0) continue;
      acc += std::exp(std::log(coeff[k]) + static_cast<double>(k) * log_lambda - shift);
    }
    log_z = shift + std::log(acc);
  } else if (n <= kForestPartitionMaxVertices && is_forest(g)) {
    log_z = forest_log_partition(g, lambda);
  } else {
    throw SizeLimitError("partition function needs n <= 30, or a forest with n <= 60");
  }
  PartitionValue out{log_z, std::nullopt};
  if (n <= 40 && log_z < std::log(std::numeric_limits<double>::max()))
    out.exact_value = std::exp(log_z);
  return out;
}

double marginal(const Graph& g, double lambda, int v, const Pinning& p) {
  check_lambda(lambda);
  g.check_vertex(v);
  if (p.pins(v))
    throw std::invalid_argument("marginal requested for pinned vertex " + std::to_string(v));
  auto pw = power_table(lambda, g.num_vertices());
  double z = 0.0, z_occ = 0.0;
  for_each_independent_set(g, p, [&](std::uint64_t m) {
    double w = pw[static_cast<std::size_t>(std::popcount(m))];
    z += w;
    if ((m >> v) & 1) z_occ += w;
  });
  return z_occ / z;
}

double InfluenceMatrix::row_abs_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < dim(); ++j) s += std::fabs(at(i, j));
  return s;
}

InfluenceMatrix influence_matrix(const Graph& g, double lambda, const Pinning& p) {
  check_lambda(lambda);
  const int n = g.num_vertices();
  InfluenceMatrix out;
  out.free = free_vertices(g, p);
  const int k = out.dim();
  out.entries.assign(static_cast<std::size_t>(k) * k, 0.0);
  if (k == 0) return out;
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < k; ++i) index[out.free[i]] = i;

  // One enumeration pass: pair_mass[i][j] = Z restricted to sigma_i = sigma_j = 1.
  // The diagonal doubles as Z restricted to sigma_i = 1.
  auto pw = power_table(lambda, n);
  std::vector<double> pair_mass(static_cast<std::size_t>(k) * k, 0.0);
  double z = 0.0;
  std::vector<int> occ;
  occ.reserve(static_cast<std::size_t>(k));
  for_each_independent_set(g, p, [&](std::uint64_t m) {
    const double w = pw[static_cast<std::size_t>(std::popcount(m))];
    z += w;
    occ.clear();
    std::uint64_t rest = m;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (index[v] >= 0) occ.push_back(index[v]);
    }
    for (int i : occ)
      for (int j : occ) pair_mass[static_cast<std::size_t>(i) * k + j] += w;
  });

  for (int i = 0; i < k; ++i) {
    const double zi1 = pair_mass[static_cast<std::size_t>(i) * k + i];
    const double zi0 = z - zi1;
    for (int j = 0; j < k; ++j) {
      if (j == i) {
        out.entries[static_cast<std::size_t>(i) * k + j] = 1.0;  // exact by definition
        continue;
      }
      const double both = pair_mass[static_cast<std::size_t>(i) * k + j];
      const double pj_given_i1 = both / zi1;
      const double pj_given_i0 = (pair_mass[static_cast<std::size_t>(j) * k + j] - both) / zi0;
      out.entries[static_cast<std::size_t>(i) * k + j] = pj_given_i1 - pj_given_i0;
    }
  }
  return out;
}

double influence_row_sum(const Graph& g, double lambda, int u, const Pinning& p) {
  check_lambda(lambda);
  g.check_vertex(u);
  const int n = g.num_vertices();
  auto free = free_vertices(g, p);
  if (!std::binary_search(free.begin(), free.end(), u))
    throw std::invalid_argument("row vertex is not free under the pinning");
  auto pw = power_table(lambda, n);
  std::vector<double> occ_mass(static_cast<std::size_t>(n), 0.0);
  std::vector<double> both_mass(static_cast<std::size_t>(n), 0.0);
  double z = 0.0;
  for_each_independent_set(g, p, [&](std::uint64_t m) {
    const double w = pw[static_cast<std::size_t>(std::popcount(m))];
    z += w;
    const bool u_occ = (m >> u) & 1;
    std::uint64_t rest = m;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      occ_mass[v] += w;
      if (u_occ) both_mass[v] += w;
    }
  });
  const double zu1 = occ_mass[u];
  const double zu0 = z - zu1;
  double sum = 0.0;
  for (int v : free) {
    if (v == u) {
      sum += 1.0;
      continue;
    }
    sum += std::fabs(both_mass[v] / zu1 - (occ_mass[v] - both_mass[v]) / zu0);
  }
  return sum;
}

SIReport si_constants(const InfluenceMatrix& m) {
  const int k = m.dim();
  if (k == 0) throw std::invalid_argument("SI constants of an empty influence matrix");
  double inf_norm = 0.0;
  for (int i = 0; i < k; ++i) inf_norm = std::max(inf_norm, m.row_abs_sum(i));

  Eigen::MatrixXd a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = m.at(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver did not converge on influence matrix");
  double max_eig = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const auto ev = solver.eigenvalues()[i];
    if (std::fabs(ev.imag()) > 1e-9)
      throw std::runtime_error("influence matrix produced a non-real eigenvalue (imag = " +
                               std::to_string(ev.imag()) + ")");
    max_eig = std::max(max_eig, ev.real());
  }
  return SIReport{inf_norm, max_eig};
}

namespace {

struct ScanBest {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t code = std::numeric_limits<std::uint64_t>::max();

  void offer(double v, std::uint64_t c) {
    if (v > value || (v == value && c < code)) {
      value = v;
      code = c;
    }
  }
  void merge(const ScanBest& other) { offer(other.value, other.code); }
};

// Decodes pinning shell `code` (base-3 digits: 0 free, 1 pinned-0, 2 pinned-1)
// and evaluates SI constants of the conditional model; returns false when the
// pinning is invalid or leaves no free coordinate.
bool evaluate_shell(const Graph& g, double lambda, std::uint64_t code,
                    const std::vector<std::uint64_t>& nbr, SIReport* out) {
  const int n = g.num_vertices();
  std::vector<signed char> forced(static_cast<std::size_t>(n), -1);
  std::uint64_t ones_mask = 0;
  std::uint64_t c = code;
  for (int v = 0; v < n; ++v) {
    int digit = static_cast<int>(c % 3);
    c /= 3;
    if (digit == 1) forced[v] = 0;
    if (digit == 2) {
      forced[v] = 1;
      ones_mask |= std::uint64_t{1} << v;
    }
  }
  for (int v = 0; v < n; ++v)
    if (((ones_mask >> v) & 1) && (nbr[v] & ones_mask)) return false;  // adjacent 1-pins

  std::vector<std::pair<int, int>> assignments;
  for (int v = 0; v < n; ++v)
    if (forced[v] >= 0) assignments.emplace_back(v, forced[v]);
  Pinning p = Pinning::create(g, assignments);
  auto m = influence_matrix(g, lambda, p);
  if (m.dim() == 0) return false;
  *out = si_constants(m);
  return true;
}

Pinning pinning_from_code(const Graph& g, std::uint64_t code) {
  std::vector<std::pair<int, int>> assignments;
  for (int v = 0; v < g.num_vertices(); ++v) {
    int digit = static_cast<int>(code % 3);
    code /= 3;
    if (digit == 1) assignments.emplace_back(v, 0);
    if (digit == 2) assignments.emplace_back(v, 1);
  }
  return Pinning::create(g, assignments);
}

WorstPinningResult worst_pinning_scan(const Graph& g, double lambda, bool parallel) {
  check_lambda(lambda);
  const int n = g.num_vertices();
  if (n > kWorstPinningMaxVertices)
    throw SizeLimitError("worst-pinning scan limited to n <= " +
                         std::to_string(kWorstPinningMaxVertices));
  if (n == 0) throw std::invalid_argument("worst-pinning scan on the empty graph");
  auto nbr = neighbor_masks(g);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;

  ScanBest best_inf, best_eig;
  std::uint64_t scanned = 0;
  std::string error;  // exceptions must not cross the parallel region

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      ScanBest local_inf, local_eig;
      std::uint64_t local_scanned = 0;
      std::string local_error;
#pragma omp for schedule(dynamic, 64) nowait
      for (long long code = 0; code < static_cast<long long>(total); ++code) {
        if (!local_error.empty()) continue;
        try {
          SIReport r;
          if (!evaluate_shell(g, lambda, static_cast<std::uint64_t>(code), nbr, &r)) continue;
          ++local_scanned;
          local_inf.offer(r.inf_norm, static_cast<std::uint64_t>(code));
          local_eig.offer(r.max_eigenvalue, static_cast<std::uint64_t>(code));
        } catch (const std::exception& e) {
          local_error = e.what();
        }
      }
#pragma omp critical
      {
        best_inf.merge(local_inf);
        best_eig.merge(local_eig);
        scanned += local_scanned;
        if (error.empty() && !local_error.empty()) error = local_error;
      }
    }
    if (!error.empty()) throw std::runtime_error(error);
#else
    parallel = false;
#endif
  }
  if (!parallel) {
    for (std::uint64_t code = 0; code < total; ++code) {
      SIReport r;
      if (!evaluate_shell(g, lambda, code, nbr, &r)) continue;
      ++scanned;
      best_inf.offer(r.inf_norm, code);
      best_eig.offer(r.max_eigenvalue, code);
    }
  }

  if (scanned == 0) throw std::runtime_error("no valid pinning left a free coordinate");
  WorstPinningResult out;
  out.report = SIReport{best_inf.value, best_eig.value};
  out.witness_inf_norm = pinning_from_code(g, best_inf.code);
  out.witness_eigenvalue = pinning_from_code(g, best_eig.code);
  out.pinnings_scanned = scanned;
  return out;
}

}  // namespace

WorstPinningResult worst_pinning_si(const Graph& g, double lambda) {
  return worst_pinning_scan(g, lambda, true);
}

WorstPinningResult worst_pinning_si_serial(const Graph& g, double lambda) {
  return worst_pinning_scan(g, lambda, false);
}

}  // namespace hardcore
