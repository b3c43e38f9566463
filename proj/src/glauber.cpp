#include "hardcore/glauber.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "hardcore/exact.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hardcore {

const char* to_string(StepAction a) {
  switch (a) {
    case StepAction::add: return "add";
    case StepAction::remove: return "remove";
    case StepAction::keep: return "keep";
    case StepAction::blocked: return "blocked";
    case StepAction::reject: return "reject";
  }
  return "?";
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

struct StepOutcome {
  int vertex;
  StepAction action;
};

// Single update on a mutable configuration; assumes sigma is independent.
StepOutcome step_inplace(const Graph& g, double p_add, Configuration& sigma, SplitMix64& rng) {
  const int v = rng.next_below(g.num_vertices());
  const double coin = rng.next_unit();  // always drawn to keep the stream aligned
  if (sigma.test(v)) {
    if (coin < p_add) return {v, StepAction::keep};
    sigma.set(v, false);
    return {v, StepAction::remove};
  }
  for (int w : g.neighbors(v))
    if (sigma.test(w)) return {v, StepAction::blocked};
  if (coin < p_add) {
    sigma.set(v, true);
    return {v, StepAction::add};
  }
  return {v, StepAction::reject};
}

}  // namespace

Configuration glauber_step(const Graph& g, double lambda, const Configuration& sigma,
                           SplitMix64& rng) {
  check_lambda(lambda);
  if (g.num_vertices() == 0) throw std::invalid_argument("empty graph");
  if (!sigma.is_independent(g))
    throw std::invalid_argument("configuration is not an independent set");
  Configuration next = sigma;
  step_inplace(g, lambda / (1.0 + lambda), next, rng);
  return next;
}

ChainResult run_chain(const Graph& g, double lambda, const Configuration& start,
                      std::int64_t steps, std::uint64_t seed,
                      std::vector<StepRecord>* trajectory) {
  check_lambda(lambda);
  if (g.num_vertices() == 0) throw std::invalid_argument("empty graph");
  if (steps < 0) throw std::invalid_argument("step count must be non-negative");
  if (!start.is_independent(g))
    throw std::invalid_argument("start configuration is not an independent set");

  const int n = g.num_vertices();
  const double p_add = lambda / (1.0 + lambda);
  SplitMix64 rng(seed);
  Configuration sigma = start;
  ChainResult out;
  out.occupied_steps.assign(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> occupied_since(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    occupied_since[v] = start.test(v) ? 0 : -1;

  int popcount = start.popcount();
  for (std::int64_t t = 1; t <= steps; ++t) {
    auto [v, action] = step_inplace(g, p_add, sigma, rng);
    if (action == StepAction::add) {
      ++popcount;
      occupied_since[v] = t;
    } else if (action == StepAction::remove) {
      --popcount;
      out.occupied_steps[v] += t - occupied_since[v];
      occupied_since[v] = -1;
    }
    if (trajectory) trajectory->push_back(StepRecord{t, v, action, popcount});
  }
  for (int v = 0; v < n; ++v)
    if (occupied_since[v] >= 0) out.occupied_steps[v] += steps - occupied_since[v];

  out.state = ChainState{std::move(sigma), steps};
  return out;
}

std::string trajectory_csv(const std::vector<StepRecord>& trajectory) {
  std::ostringstream out;
  out << "step,vertex_picked,action,popcount\n";
  for (const auto& r : trajectory)
    out << r.step << "," << r.vertex << "," << to_string(r.action) << "," << r.popcount << "\n";
  return out.str();
}

TransitionMatrix transition_matrix(const Graph& g, double lambda) {
  check_lambda(lambda);
  const int n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("empty graph");

  TransitionMatrix m;
  m.lambda = lambda;
  for_each_independent_set(g, [&](std::uint64_t mask) {
    if (static_cast<int>(m.states.size()) >= kDenseStateGuard)
      throw SizeLimitError("state space exceeds the dense guard (" +
                           std::to_string(kDenseStateGuard) + " independent sets)");
    m.states.push_back(mask);
  });
  m.dim = static_cast<int>(m.states.size());
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(m.states.size() * 2);
  for (int i = 0; i < m.dim; ++i) index.emplace(m.states[i], i);

  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) nbr[v] |= std::uint64_t{1} << w;

  const double p_add = lambda / (1.0 + lambda);
  const double p_stay = 1.0 / (1.0 + lambda);
  const double pick = 1.0 / n;
  m.entries.assign(static_cast<std::size_t>(m.dim) * m.dim, 0.0);
  for (int s = 0; s < m.dim; ++s) {
    const std::uint64_t mask = m.states[s];
    double* row = &m.entries[static_cast<std::size_t>(s) * m.dim];
    for (int v = 0; v < n; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (mask & bit) {
        row[s] += pick * p_add;                       // keep v
        row[index.at(mask & ~bit)] += pick * p_stay;  // remove v
      } else if (nbr[v] & mask) {
        row[s] += pick;  // blocked
      } else {
        row[index.at(mask | bit)] += pick * p_add;  // add v
        row[s] += pick * p_stay;                    // coin said no
      }
    }
  }

  // Gibbs stationary vector; shift in the log domain before normalizing
  m.stationary.assign(static_cast<std::size_t>(m.dim), 0.0);
  const double log_lambda = std::log(lambda);
  double max_log = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(static_cast<std::size_t>(m.dim));
  for (int i = 0; i < m.dim; ++i) {
    logs[i] = std::popcount(m.states[i]) * log_lambda;
    max_log = std::max(max_log, logs[i]);
  }
  double z = 0.0;
  for (int i = 0; i < m.dim; ++i) {
    m.stationary[i] = std::exp(logs[i] - max_log);
    z += m.stationary[i];
  }
  for (double& x : m.stationary) x /= z;
  return m;
}

namespace {

MixingResult mixing_scan(const TransitionMatrix& m, double tv_threshold, std::int64_t t_max,
                         bool parallel) {
  const int dim = m.dim;
  if (dim == 0) throw std::invalid_argument("empty transition matrix");
  // dist[s] = distribution after t steps started from state s (row-major)
  std::vector<double> dist(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int s = 0; s < dim; ++s) dist[static_cast<std::size_t>(s) * dim + s] = 1.0;
  std::vector<double> next(dist.size());
  std::vector<double> row_tv(static_cast<std::size_t>(dim),
                             std::numeric_limits<double>::infinity());

  MixingResult out;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    double worst = 0.0;
    int monotone_violations = 0;  // exceptions must not cross the parallel region
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst) \
    reduction(+ : monotone_violations) if (parallel)
#endif
    for (int s = 0; s < dim; ++s) {
      const double* d = &dist[static_cast<std::size_t>(s) * dim];
      double tv = 0.0;
      for (int j = 0; j < dim; ++j) tv += std::fabs(d[j] - m.stationary[j]);
      tv *= 0.5;
      if (tv > row_tv[s] + 1e-12) ++monotone_violations;
      row_tv[s] = tv;
      if (tv > worst) worst = tv;
    }
    if (monotone_violations > 0)
      throw std::logic_error("TV to stationarity increased along the chain");
    out.worst_tv.push_back(worst);
    if (worst <= tv_threshold) {
      out.t_mix = t;
      return out;
    }
    if (t == t_max) break;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int s = 0; s < dim; ++s) {
      const double* d = &dist[static_cast<std::size_t>(s) * dim];
      double* nd = &next[static_cast<std::size_t>(s) * dim];
      std::fill(nd, nd + dim, 0.0);
      for (int k = 0; k < dim; ++k) {
        const double w = d[k];
        if (w == 0.0) continue;
        const double* pk = &m.entries[static_cast<std::size_t>(k) * dim];
        for (int j = 0; j < dim; ++j) nd[j] += w * pk[j];
      }
    }
    dist.swap(next);
  }
  throw std::runtime_error("mixing-time computation hit the step cutoff (" +
                           std::to_string(t_max) + ") before reaching the threshold");
}

}  // namespace

MixingResult exact_mixing_time(const TransitionMatrix& m, double tv_threshold,
                               std::int64_t t_max) {
  return mixing_scan(m, tv_threshold, t_max, true);
}

MixingResult exact_mixing_time_serial(const TransitionMatrix& m, double tv_threshold,
                                      std::int64_t t_max) {
  return mixing_scan(m, tv_threshold, t_max, false);
}

SpectralQuantities spectral_quantities(const TransitionMatrix& m) {
  const int dim = m.dim;
  if (dim == 0) throw std::invalid_argument("empty transition matrix");
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = m.at(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver did not converge on transition matrix");
  std::vector<double> moduli(static_cast<std::size_t>(dim));
  double top_real = 0.0, top_mod = -1.0;
  for (int i = 0; i < dim; ++i) {
    moduli[i] = std::abs(solver.eigenvalues()[i]);
    if (moduli[i] > top_mod) {
      top_mod = moduli[i];
      top_real = solver.eigenvalues()[i].real();
    }
  }
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  if (std::fabs(top_real - 1.0) > 1e-10)
    throw std::runtime_error("top eigenvalue deviates from 1 by more than 1e-10");
  SpectralQuantities out;
  out.top_eigenvalue = top_real;
  out.second_modulus = dim > 1 ? moduli[1] : 0.0;
  return out;
}

TvCurve empirical_tv_curve(const Graph& g, double lambda,
                           const std::vector<Configuration>& starts, int reps,
                           std::int64_t horizon, std::uint64_t seed) {
  check_lambda(lambda);
  if (starts.empty()) throw std::invalid_argument("at least one start required");
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  const int n = g.num_vertices();
  for (const auto& s : starts)
    if (!s.is_independent(g)) throw std::invalid_argument("start is not an independent set");

  const int ns = static_cast<int>(starts.size());
  const double p_add = lambda / (1.0 + lambda);
  // delta[s][t*n + v]: occupancy change of v at step t summed over replicas;
  // prefix sums over t recover per-time occupancy counts
  std::vector<std::vector<std::int64_t>> delta(
      static_cast<std::size_t>(ns),
      std::vector<std::int64_t>(static_cast<std::size_t>(horizon + 1) * n, 0));

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::vector<std::int64_t>> local(
        static_cast<std::size_t>(ns),
        std::vector<std::int64_t>(static_cast<std::size_t>(horizon + 1) * n, 0));
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
    for (int r = 0; r < reps; ++r) {
      // replica randomness is shared across starts (coupled streams)
      const std::uint64_t replica_seed = mix_seed(seed, static_cast<std::uint64_t>(r));
      for (int si = 0; si < ns; ++si) {
        SplitMix64 rng(replica_seed);
        Configuration sigma = starts[si];
        auto* buf = local[si].data();
        for (int v = 0; v < n; ++v)
          if (sigma.test(v)) buf[v] += 1;
        for (std::int64_t t = 1; t <= horizon; ++t) {
          auto [v, a] = step_inplace(g, p_add, sigma, rng);
          if (a == StepAction::add) buf[t * n + v] += 1;
          if (a == StepAction::remove) buf[t * n + v] -= 1;
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    for (int si = 0; si < ns; ++si)
      for (std::size_t i = 0; i < delta[si].size(); ++i) delta[si][i] += local[si][i];
  }

  // prefix over t: occ[s][t][v] = occ[s][t-1][v] + delta[s][t][v]
  for (int si = 0; si < ns; ++si)
    for (std::int64_t t = 1; t <= horizon; ++t)
      for (int v = 0; v < n; ++v)
        delta[si][static_cast<std::size_t>(t) * n + v] +=
            delta[si][static_cast<std::size_t>(t - 1) * n + v];

  TvCurve curve;
  for (std::int64_t t = 0; t <= horizon; ++t) {
    double best = 0.0, best_hw = 0.0;
    for (int a = 0; a < ns; ++a)
      for (int b = a + 1; b < ns; ++b) {
        double diff = 0.0, hw = 0.0;
        for (int v = 0; v < n; ++v) {
          double pa = static_cast<double>(delta[a][static_cast<std::size_t>(t) * n + v]) / reps;
          double pb = static_cast<double>(delta[b][static_cast<std::size_t>(t) * n + v]) / reps;
          diff += std::fabs(pa - pb);
          hw += std::sqrt((pa * (1.0 - pa) + pb * (1.0 - pb)) / reps);
        }
        if (diff * 0.5 > best) {
          best = diff * 0.5;
          best_hw = hw * 0.5;
        }
      }
    curve.points.push_back(TvCurvePoint{t, best, best_hw});
  }
  return curve;
}

}  // namespace hardcore
