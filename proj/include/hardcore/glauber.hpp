#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardcore/graph.hpp"
#include "hardcore/rng.hpp"

namespace hardcore {

inline constexpr int kDenseStateGuard = 20'000;
inline constexpr std::int64_t kMixingStepCutoff = 10'000'000;

// One update: pick v uniformly, drop it, and re-add with probability
// lambda/(1+lambda) when nothing blocks it. The vertex pick and the occupancy
// coin are always drawn, in that order, so streams stay aligned.
enum class StepAction : std::uint8_t { add, remove, keep, blocked, reject };
const char* to_string(StepAction a);

struct StepRecord {
  std::int64_t step;
  int vertex;
  StepAction action;
  int popcount;
};

Configuration glauber_step(const Graph& g, double lambda, const Configuration& sigma,
                           SplitMix64& rng);

struct ChainState {
  Configuration config;
  std::int64_t step;
};

struct ChainResult {
  ChainState state;
  std::vector<std::int64_t> occupied_steps;  // per vertex: #steps occupied after the update
};

// Deterministic given (seed, start, steps); same seed, same trajectory.
ChainResult run_chain(const Graph& g, double lambda, const Configuration& start,
                      std::int64_t steps, std::uint64_t seed,
                      std::vector<StepRecord>* trajectory = nullptr);

// CSV: step,vertex_picked,action,popcount
std::string trajectory_csv(const std::vector<StepRecord>& trajectory);

// Dense transition matrix over I(G) in enumeration order.
struct TransitionMatrix {
  std::vector<std::uint64_t> states;  // occupancy masks, enumeration order
  int dim = 0;
  double lambda = 0.0;
  std::vector<double> entries;     // row-major
  std::vector<double> stationary;  // Gibbs weights, normalized

  double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
};

TransitionMatrix transition_matrix(const Graph& g, double lambda);

struct MixingResult {
  std::int64_t t_mix;            // first t with worst-start TV <= threshold
  std::vector<double> worst_tv;  // worst-start TV at t = 0, 1, ..., t_mix
};

// Iterated matrix products from every start simultaneously; TV to
// stationarity is checked to be nonincreasing for every start along the way.
// Throws if the cutoff is hit before the threshold.
MixingResult exact_mixing_time(const TransitionMatrix& m, double tv_threshold = 0.25,
                               std::int64_t t_max = kMixingStepCutoff);
MixingResult exact_mixing_time_serial(const TransitionMatrix& m, double tv_threshold = 0.25,
                                      std::int64_t t_max = kMixingStepCutoff);

struct SpectralQuantities {
  double top_eigenvalue;  // 1 within 1e-10 (checked)
  double second_modulus;  // modulus of the second-largest eigenvalue
};

SpectralQuantities spectral_quantities(const TransitionMatrix& m);

// Heuristic convergence diagnostic for graphs beyond the dense guard: chains
// from all starts share replica randomness, and the proxy at time t is the
// largest per-vertex occupancy discrepancy (half L1) between two starts.
// This is NOT a total-variation bound.
struct TvCurvePoint {
  std::int64_t t;
  double proxy;
  double half_width;  // binomial standard-error aggregate for the maximizing pair
};

struct TvCurve {
  std::vector<TvCurvePoint> points;
  bool heuristic = true;  // always; kept explicit so reports carry the label
};

TvCurve empirical_tv_curve(const Graph& g, double lambda,
                           const std::vector<Configuration>& starts, int reps,
                           std::int64_t horizon, std::uint64_t seed);

}  // namespace hardcore
