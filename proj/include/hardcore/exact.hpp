#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hardcore/graph.hpp"

namespace hardcore {

// Brute-force ground truth on small instances. Everything here enumerates the
// independent sets of the graph exhaustively, in a fixed deterministic order:
// backtracking over vertices in ascending order, unoccupied branch first.

inline constexpr int kEnumerationMaxVertices = 30;
inline constexpr int kForestPartitionMaxVertices = 60;
inline constexpr int kWorstPinningMaxVertices = 16;

struct PartitionValue {
  double log_value;                  // log Z, always >= 0
  std::optional<double> exact_value;  // plain value when n <= 40
};

// Visits each sigma in I(G) exactly once as an occupancy bitmask.
void for_each_independent_set(const Graph& g, const std::function<void(std::uint64_t)>& visit);

// Same, restricted to configurations consistent with the pinning.
void for_each_independent_set(const Graph& g, const Pinning& p,
                              const std::function<void(std::uint64_t)>& visit);

std::vector<Configuration> enumerate_independent_sets(const Graph& g);
std::uint64_t count_independent_sets(const Graph& g);

// Coefficients c_k = #{independent sets of size k} (the independence polynomial).
std::vector<double> independence_polynomial(const Graph& g);

// Z = sum over I(G) of lambda^|sigma|, accumulated in the log domain.
// Enumeration up to n = 30; forests are additionally handled up to n = 60 by
// bottom-up elimination.
PartitionValue partition_function(const Graph& g, double lambda);

// Pr[sigma_v = 1] under the conditional distribution given p.
double marginal(const Graph& g, double lambda, int v, const Pinning& p = {});

// Dense influence matrix over the free coordinates A (unpinned vertices with
// no occupied-pinned neighbor), rows and columns in ascending vertex order.
struct InfluenceMatrix {
  std::vector<int> free;        // A, ascending original vertex ids
  std::vector<double> entries;  // row-major |A| x |A|

  int dim() const { return static_cast<int>(free.size()); }
  double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * free.size() + j]; }
  double row_abs_sum(int i) const;
};

InfluenceMatrix influence_matrix(const Graph& g, double lambda, const Pinning& p = {});

// Sum over j of |Psi(u, j)| without materializing the whole matrix.
double influence_row_sum(const Graph& g, double lambda, int u, const Pinning& p = {});

struct SIReport {
  double inf_norm;        // max absolute row sum
  double max_eigenvalue;  // largest (real) eigenvalue
};

// Dense nonsymmetric eigensolve; throws if the solver fails to converge or if
// any eigenvalue has imaginary part above 1e-9.
SIReport si_constants(const InfluenceMatrix& m);

struct WorstPinningResult {
  SIReport report;             // maxima over all valid pinnings (empty one included)
  Pinning witness_inf_norm;    // first pinning in scan order achieving the max row sum
  Pinning witness_eigenvalue;  // same for the eigenvalue maximum
  std::uint64_t pinnings_scanned;
};

// Scans all 3^n pinning shells, pruned by validity; n <= 16.
WorstPinningResult worst_pinning_si(const Graph& g, double lambda);         // OpenMP over shells
WorstPinningResult worst_pinning_si_serial(const Graph& g, double lambda);  // reference loop

}  // namespace hardcore
