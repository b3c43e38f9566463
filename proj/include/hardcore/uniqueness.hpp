#pragma once

#include <cstdint>

#include "hardcore/error.hpp"

namespace hardcore {

// Fugacity regime bundle: lambda = (1 - delta) * lambda_c(Delta), d = Delta - 1.
struct HardcoreParams {
  int Delta;
  int d;
  double delta;
  double lambda;
  double lambda_c;
};

HardcoreParams params_from_slack(int Delta, double delta);
HardcoreParams params_from_fugacity(int Delta, double lambda);

// lambda_c(Delta) = (Delta-1)^(Delta-1) / (Delta-2)^Delta, Delta >= 3.
// Evaluated in extended precision as (1/(Delta-2)) * (1 + 1/(Delta-2))^(Delta-1).
double critical_fugacity(int Delta);

// F_{d,lambda}(x) = lambda (1-x)^d / (1 + lambda (1-x)^d), x in [0,1].
double tree_recurrence(int d, double lambda, double x);

// t-fold iteration F^(t)(x0), F^(0) = identity.
double iterate_recurrence(int d, double lambda, double x0, int t);

struct FixedPointResult {
  double x_hat;     // in (0, 1/d], equality only at lambda = lambda_c
  double residual;  // |F(x_hat) - x_hat|
  int iterations;   // bisection steps taken
};

// Unique fixed point of F_{d,lambda} for 0 < lambda <= lambda_c(d+1), found by
// bisection on the increasing function h(x) = x/(1-x)^(d+1) - lambda. Inputs
// beyond the uniqueness threshold are rejected.
FixedPointResult fixed_point(int d, double lambda);

struct SiConstant {
  double exact;        // (1 + x_hat) / (1 - d x_hat)
  double closed_form;  // (2/delta) (1 + 2/(d-1))
};

// Requires delta > 0; the exact constant diverges at criticality.
SiConstant si_upper_constant(const HardcoreParams& params);

// x_hat(delta) <= (1/d)(1 - (d-1) delta / (2d)).
double fixed_point_upper_bound(int d, double delta);

// Inverse of the fixed-point map: the delta with fixed_point(d, (1-delta)*lambda_c) = x_hat.
double slack_of_fixed_point(int d, double x_hat);

struct ProofFunctions {
  double f;             // (1+(d+1)L(1-x)^d) / (1-(d^2 x - 1)L(1-x)^d)
  double g;             // ((1-x)^-d + (d+1)L) / (1+dx), +inf at x = 1
  double h;             // x/(1-x)^(d+1) - L, +inf at x = 1
  double a;             // F(x) + d x F(x) Phi*, with Phi* = 1/(1 - d x_hat)
  double validity_lhs;  // (d^2 x - 1) L (1-x)^d, must stay < 1 below criticality
};

ProofFunctions proof_functions(int d, double lambda, double x);

struct MixingBound {
  double rho;        // 2 (1 + 2/(Delta-2))
  double exponent;   // 2 + rho = 4 + 4/(Delta-2)
  double theta;      // 23/24
  long long n;
  double log_bound_closed;      // log of exp-integral factor, closed form
  double log_bound_quadrature;  // same integral by composite Simpson

  double k_of(double delta) const;  // K(delta) = min(rho/delta, n)
};

// Requires n >= rho/theta ("n sufficiently large"). The closed form is
//   n log(n/(n-rho)) + rho log(theta/(1-theta)) + rho log((n-rho)/rho),
// the exact value of the integral of K(delta)/(1-delta) over [0, theta].
MixingBound mixing_bound(int Delta, long long n);

// 4 + 4/(Delta-2) without the n-dependent parts; valid for any Delta >= 3.
double mixing_exponent(int Delta);

}  // namespace hardcore
