#include "hardcore/uniqueness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hardcore {

namespace {

long double critical_fugacity_l(int Delta) {
  if (Delta < 3) throw std::invalid_argument("critical fugacity requires Delta >= 3");
  // (1/(Delta-2)) * ((Delta-1)/(Delta-2))^(Delta-1); bounded for all Delta
  const long double base = static_cast<long double>(Delta - 1) / (Delta - 2);
  long double pow = 1.0L;
  for (int i = 0; i < Delta - 1; ++i) pow *= base;
  return pow / (Delta - 2);
}

void check_d(int d) {
  if (d < 2) throw std::invalid_argument("d must be >= 2 (Delta >= 3)");
}

void check_unit_interval(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
}

}  // namespace

double critical_fugacity(int Delta) { return static_cast<double>(critical_fugacity_l(Delta)); }

HardcoreParams params_from_slack(int Delta, double delta) {
  if (Delta < 3) throw std::invalid_argument("Delta must be >= 3");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0,1]");
  double lc = critical_fugacity(Delta);
  return HardcoreParams{Delta, Delta - 1, delta, (1.0 - delta) * lc, lc};
}

HardcoreParams params_from_fugacity(int Delta, double lambda) {
  if (Delta < 3) throw std::invalid_argument("Delta must be >= 3");
  double lc = critical_fugacity(Delta);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (lambda > lc * (1.0 + 1e-12))
    throw std::invalid_argument("lambda " + std::to_string(lambda) +
                                " exceeds the uniqueness threshold lambda_c(" +
                                std::to_string(Delta) + ") = " + std::to_string(lc));
  return HardcoreParams{Delta, Delta - 1, 1.0 - lambda / lc, lambda, lc};
}

double tree_recurrence(int d, double lambda, double x) {
  check_d(d);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  check_unit_interval(x);
  double t = lambda * std::pow(1.0 - x, d);
  return t / (1.0 + t);
}

double iterate_recurrence(int d, double lambda, double x0, int t) {
  check_d(d);
  if (t < 0) throw std::invalid_argument("iteration count must be non-negative");
  check_unit_interval(x0);
  double x = x0;
  for (int i = 0; i < t; ++i) x = tree_recurrence(d, lambda, x);
  return x;
}

FixedPointResult fixed_point(int d, double lambda) {
  check_d(d);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const long double lc = critical_fugacity_l(d + 1);
  if (static_cast<long double>(lambda) > lc * (1.0L + 1e-12L))
    throw std::invalid_argument("lambda exceeds lambda_c(" + std::to_string(d + 1) +
                                "); fixed point only tracked in the uniqueness regime");
  // h(x) = x/(1-x)^(d+1) - lambda is increasing with a single root in (0,1)
  const long double lam = lambda;
  auto h = [&](long double x) { return x / std::pow(1.0L - x, static_cast<long double>(d + 1)) - lam; };
  long double lo = 0.0L, hi = 1.0L - 1e-9L;
  while (h(hi) < 0.0L) hi = 0.5L * (1.0L + hi);  // unreachable in the admitted regime
  int iters = 0;
  for (; iters < 200 && hi - lo > 1e-18L; ++iters) {
    long double mid = 0.5L * (lo + hi);
    if (h(mid) < 0.0L)
      lo = mid;
    else
      hi = mid;
  }
  double x_hat = static_cast<double>(0.5L * (lo + hi));
  double residual = std::fabs(tree_recurrence(d, lambda, x_hat) - x_hat);
  return FixedPointResult{x_hat, residual, iters};
}

SiConstant si_upper_constant(const HardcoreParams& params) {
  if (!(params.delta > 0.0))
    throw std::invalid_argument("exact SI constant diverges at delta = 0");
  double x_hat = fixed_point(params.d, params.lambda).x_hat;
  double exact = (1.0 + x_hat) / (1.0 - params.d * x_hat);
  double closed = (2.0 / params.delta) * (1.0 + 2.0 / (params.d - 1));
  return SiConstant{exact, closed};
}

double fixed_point_upper_bound(int d, double delta) {
  check_d(d);
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  return (1.0 / d) * (1.0 - (d - 1) * delta / (2.0 * d));
}

double slack_of_fixed_point(int d, double x_hat) {
  check_d(d);
  if (!(x_hat > 0.0 && x_hat <= 1.0 / d))
    throw std::invalid_argument("x_hat must lie in (0, 1/d]");
  long double lc = critical_fugacity_l(d + 1);
  long double x = x_hat;
  long double delta = 1.0L - (x / std::pow(1.0L - x, static_cast<long double>(d + 1))) / lc;
  return static_cast<double>(delta);
}

ProofFunctions proof_functions(int d, double lambda, double x) {
  check_d(d);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  check_unit_interval(x);
  const double w = lambda * std::pow(1.0 - x, d);
  const double validity = (static_cast<double>(d) * d * x - 1.0) * w;
  if (validity >= 1.0)
    throw std::domain_error("validity inequality fails: (d^2 x - 1) lambda (1-x)^d >= 1");
  const double f = (1.0 + (d + 1) * w) / (1.0 - validity);
  double g;
  if (x == 1.0) {
    g = std::numeric_limits<double>::infinity();
  } else {
    g = (std::pow(1.0 - x, -d) + (d + 1) * lambda) / (1.0 + d * x);
  }
  double h;
  if (x == 1.0) {
    h = std::numeric_limits<double>::infinity();
  } else {
    h = x / std::pow(1.0 - x, d + 1) - lambda;
  }
  const double big_f = w / (1.0 + w);
  const double phi_star = 1.0 / (1.0 - d * fixed_point(d, lambda).x_hat);
  const double a = big_f + d * x * big_f * phi_star;
  return ProofFunctions{f, g, h, a, validity};
}

double mixing_exponent(int Delta) {
  if (Delta < 3) throw std::invalid_argument("Delta must be >= 3");
  return 4.0 + 4.0 / (Delta - 2);
}

double MixingBound::k_of(double delta) const {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0,1]");
  if (delta == 0.0) return static_cast<double>(n);
  return std::min(rho / delta, static_cast<double>(n));
}

namespace {

// Composite Simpson on [a,b] with m subintervals (m even).
template <class F>
double simpson(F&& f, double a, double b, int m) {
  double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * ((i & 1) ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

MixingBound mixing_bound(int Delta, long long n) {
  const double exponent = mixing_exponent(Delta);
  const double rho = exponent - 2.0;  // exact: subtracting 2 from [4,8] loses no bits
  const double theta = 23.0 / 24.0;
  if (static_cast<double>(n) < rho / theta)
    throw std::invalid_argument("n below the rho/theta threshold (" +
                                std::to_string(rho / theta) + ") required by the closed form");
  const double nn = static_cast<double>(n);
  const double closed = nn * std::log(nn / (nn - rho)) + rho * std::log(theta / (1.0 - theta)) +
                        rho * std::log((nn - rho) / rho);
  // independent route: integrate K(delta)/(1-delta) with the kink at rho/n
  const double split = rho / nn;
  double quad = simpson([&](double x) { return nn / (1.0 - x); }, 0.0, split, 4000);
  // substituting delta = e^u tames the 1/delta factor near the left endpoint;
  // the integrand still steepens toward theta, so spend points generously
  quad += simpson([&](double u) { return rho / (1.0 - std::exp(u)); }, std::log(split),
                  std::log(theta), 40000);
  MixingBound out;
  out.rho = rho;
  out.exponent = exponent;
  out.theta = theta;
  out.n = n;
  out.log_bound_closed = closed;
  out.log_bound_quadrature = quad;
  return out;
}

}  // namespace hardcore
