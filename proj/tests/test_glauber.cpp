#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "hardcore/exact.hpp"
#include "hardcore/glauber.hpp"
#include "hardcore/graph_gen.hpp"

using namespace hardcore;

namespace {

Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

// deterministic sparse random graph
Graph random_graph(int n, int edges, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::pair<int, int>> e;
  while (static_cast<int>(e.size()) < edges) {
    int u = rng.next_below(n), v = rng.next_below(n);
    if (u == v) continue;
    auto key = std::pair<int, int>{std::min(u, v), std::max(u, v)};
    if (std::find(e.begin(), e.end(), key) != e.end()) continue;
    e.push_back(key);
  }
  return Graph::from_edges(n, e);
}

int state_index(const TransitionMatrix& m, std::uint64_t mask) {
  for (int i = 0; i < m.dim; ++i)
    if (m.states[i] == mask) return i;
  return -1;
}

}  // namespace

TEST_CASE("single step keeps independence and validates input") {
  Graph p3 = path(3);
  SplitMix64 rng(7);
  Configuration bad = Configuration::from_mask(3, 0b011);
  CHECK_THROWS_AS(glauber_step(p3, 1.0, bad, rng), std::invalid_argument);

  for (std::uint64_t seed : {11u, 12u}) {
    Graph g = random_graph(40, 80, seed);
    Configuration sigma(40);
    bool all_independent = true;
    for (int t = 0; t < 100000; ++t) {
      sigma = glauber_step(g, 1.5, sigma, rng);  // validates sigma every call
      all_independent = all_independent && sigma.is_independent(g);
    }
    CHECK(all_independent);
  }
}

TEST_CASE("run_chain basics") {
  Graph k2 = path(2);
  Configuration empty(2);
  auto zero = run_chain(k2, 1.0, empty, 0, 42);
  CHECK(zero.state.config == empty);
  CHECK(zero.state.step == 0);

  auto a = run_chain(k2, 1.0, empty, 50000, 42);
  auto b = run_chain(k2, 1.0, empty, 50000, 42);
  CHECK(a.state.config == b.state.config);
  CHECK(a.occupied_steps == b.occupied_steps);
  auto c = run_chain(k2, 1.0, empty, 50000, 43);
  CHECK(a.occupied_steps != c.occupied_steps);

  Configuration bad = Configuration::from_mask(2, 0b11);
  CHECK_THROWS_AS(run_chain(k2, 1.0, bad, 10, 1), std::invalid_argument);
}

TEST_CASE("occupancy matches the exact marginal on K2") {
  // 50 independent chains of 20k steps; z-test against lambda/(1+2*lambda)
  Graph k2 = path(2);
  Configuration empty(2);
  const int chains = 50;
  const std::int64_t steps = 20000;
  std::vector<double> est;
  for (int i = 0; i < chains; ++i) {
    auto r = run_chain(k2, 1.0, empty, steps, mix_seed(20240601, i));
    est.push_back(static_cast<double>(r.occupied_steps[0]) / steps);
  }
  double mean = std::accumulate(est.begin(), est.end(), 0.0) / chains;
  double var = 0.0;
  for (double x : est) var += (x - mean) * (x - mean);
  var /= chains - 1;
  double se = std::sqrt(var / chains);
  CHECK(std::fabs(mean - 1.0 / 3.0) <= 3.0 * se);
}

TEST_CASE("trajectory records") {
  Graph k2 = path(2);
  Configuration empty(2);
  std::vector<StepRecord> traj;
  run_chain(k2, 1.0, empty, 64, 5, &traj);
  CHECK(traj.size() == 64);
  CHECK(traj.front().step == 1);
  CHECK(traj.back().step == 64);
  for (const auto& r : traj) {
    CHECK(r.vertex >= 0);
    CHECK(r.vertex < 2);
    CHECK(r.popcount >= 0);
    CHECK(r.popcount <= 1);  // K2 never fits two
  }
  std::string csv = trajectory_csv(traj);
  CHECK(csv.rfind("step,vertex_picked,action,popcount\n", 0) == 0);

  std::vector<StepRecord> traj2;
  run_chain(k2, 1.0, empty, 64, 5, &traj2);
  CHECK(trajectory_csv(traj2) == csv);  // bit-reproducible
}

TEST_CASE("transition matrix point values") {
  auto m1 = transition_matrix(path(1), 1.0);
  CHECK(m1.dim == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(m1.at(i, j) == doctest::Approx(0.5).epsilon(1e-15));

  auto m2 = transition_matrix(path(2), 1.0);
  CHECK(m2.dim == 3);
  int s_empty = state_index(m2, 0b00);
  int s_u = state_index(m2, 0b01);
  int s_w = state_index(m2, 0b10);
  CHECK(m2.at(s_empty, s_u) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m2.at(s_empty, s_w) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m2.at(s_empty, s_empty) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m2.at(s_u, s_empty) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m2.at(s_u, s_u) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m2.at(s_u, s_w) == 0.0);

  CHECK_THROWS_AS(transition_matrix(star(15), 1.0), SizeLimitError);  // 2^15+1 states
}

TEST_CASE("detailed balance, stationarity, stochasticity") {
  std::vector<Graph> family = enumerate_graphs(5, 4, true);
  family.push_back(path(10));
  family.push_back(cycle(8));
  family.push_back(star(8));
  for (const Graph& g : family) {
    for (double lambda : {0.5, 1.0, 4.0}) {
      auto m = transition_matrix(g, lambda);
      for (int i = 0; i < m.dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.dim; ++j) row += m.at(i, j);
        CHECK(std::fabs(row - 1.0) <= 1e-12);
      }
      double worst_db = 0.0, worst_stat = 0.0;
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
          worst_db = std::max(worst_db, std::fabs(m.stationary[i] * m.at(i, j) -
                                                  m.stationary[j] * m.at(j, i)));
      for (int j = 0; j < m.dim; ++j) {
        double mu_p = 0.0;
        for (int i = 0; i < m.dim; ++i) mu_p += m.stationary[i] * m.at(i, j);
        worst_stat = std::max(worst_stat, std::fabs(mu_p - m.stationary[j]));
      }
      CHECK(worst_db <= 1e-12);
      CHECK(worst_stat <= 1e-12);
    }
  }
}

TEST_CASE("exact mixing time") {
  auto m1 = transition_matrix(path(1), 1.0);
  auto r1 = exact_mixing_time(m1);
  CHECK(r1.t_mix == 1);  // rank-one chain is stationary after one step
  CHECK(r1.worst_tv.front() == doctest::Approx(0.5).epsilon(1e-15));

  auto m2 = transition_matrix(path(2), 1.0);
  auto r2 = exact_mixing_time(m2);
  CHECK(r2.t_mix > 0);
  CHECK(r2.worst_tv.back() <= 0.25);
  for (std::size_t t = 1; t < r2.worst_tv.size(); ++t)
    CHECK(r2.worst_tv[t] <= r2.worst_tv[t - 1] + 1e-12);

  // star K_{1,3} at criticality for Delta = 3
  auto ms = transition_matrix(star(3), 4.0);
  CHECK(ms.dim == 9);
  auto rs = exact_mixing_time(ms);
  CHECK(rs.t_mix > 0);
  // stationary vector equals the Gibbs weights
  double direct_z = 0.0;
  for (int i = 0; i < ms.dim; ++i) direct_z += std::pow(4.0, std::popcount(ms.states[i]));
  for (int i = 0; i < ms.dim; ++i)
    CHECK(std::fabs(ms.stationary[i] - std::pow(4.0, std::popcount(ms.states[i])) / direct_z) <=
          1e-12);

  // cutoff reporting
  CHECK_THROWS_AS(exact_mixing_time(m2, 1e-300, 3), std::runtime_error);
}

TEST_CASE("parallel mixing equals serial") {
  auto m = transition_matrix(cycle(6), 1.0);
  auto par = exact_mixing_time(m);
  auto ser = exact_mixing_time_serial(m);
  CHECK(par.t_mix == ser.t_mix);
  CHECK(par.worst_tv == ser.worst_tv);  // bitwise: per-row arithmetic is identical
}

TEST_CASE("spectral quantities") {
  auto q1 = spectral_quantities(transition_matrix(path(1), 1.0));
  CHECK(q1.top_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q1.second_modulus <= 1e-12);

  auto q2 = spectral_quantities(transition_matrix(path(2), 1.0));
  CHECK(q2.second_modulus > 0.0);
  CHECK(q2.second_modulus < 1.0);

  // irreducible and aperiodic on every instance we can afford
  for (const Graph& g : {path(4), cycle(5), star(4)}) {
    auto q = spectral_quantities(transition_matrix(g, 2.0));
    CHECK(q.second_modulus < 1.0);
  }
}

TEST_CASE("empirical TV proxy") {
  Graph k2 = path(2);
  std::vector<Configuration> starts{Configuration(2), Configuration::from_mask(2, 0b01)};

  auto flat = empirical_tv_curve(k2, 1.0, starts, 100, 0, 9);
  CHECK(flat.points.size() == 1);
  CHECK(flat.points[0].proxy == doctest::Approx(0.5).epsilon(1e-15));  // half Hamming distance
  CHECK(flat.heuristic);

  // identical starts share replica randomness, so the proxy vanishes exactly
  std::vector<Configuration> twins{Configuration(2), Configuration(2)};
  auto zero = empirical_tv_curve(k2, 1.0, twins, 50, 40, 9);
  for (const auto& pt : zero.points) CHECK(pt.proxy == 0.0);

  // same seed, same curve
  auto c1 = empirical_tv_curve(k2, 1.0, starts, 200, 25, 1234);
  auto c2 = empirical_tv_curve(k2, 1.0, starts, 200, 25, 1234);
  for (std::size_t i = 0; i < c1.points.size(); ++i)
    CHECK(c1.points[i].proxy == c2.points[i].proxy);

  // proxy tracks the exact per-vertex marginal discrepancy on K2
  const int reps = 4000, horizon = 30;
  auto curve = empirical_tv_curve(k2, 1.0, starts, reps, horizon, 27182818);
  auto m = transition_matrix(k2, 1.0);
  int s0 = state_index(m, 0b00), s1 = state_index(m, 0b01);
  std::vector<double> d0(m.dim, 0.0), d1(m.dim, 0.0);
  d0[s0] = 1.0;
  d1[s1] = 1.0;
  for (int t = 0; t <= horizon; ++t) {
    double exact = 0.0;
    for (int v = 0; v < 2; ++v) {
      double e0 = 0.0, e1 = 0.0;
      for (int i = 0; i < m.dim; ++i) {
        if ((m.states[i] >> v) & 1) {
          e0 += d0[i];
          e1 += d1[i];
        }
      }
      exact += std::fabs(e0 - e1);
    }
    exact *= 0.5;
    CHECK(std::fabs(curve.points[t].proxy - exact) <=
          4.0 * curve.points[t].half_width + 0.02);
    // advance both distributions one step
    std::vector<double> n0(m.dim, 0.0), n1(m.dim, 0.0);
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j) {
        n0[j] += d0[i] * m.at(i, j);
        n1[j] += d1[i] * m.at(i, j);
      }
    d0.swap(n0);
    d1.swap(n1);
  }

  CHECK_THROWS_AS(empirical_tv_curve(k2, 1.0, {}, 10, 5, 1), std::invalid_argument);
  std::vector<Configuration> bad{Configuration::from_mask(2, 0b11)};
  CHECK_THROWS_AS(empirical_tv_curve(k2, 1.0, bad, 10, 5, 1), std::invalid_argument);
}
