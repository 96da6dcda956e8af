#pragma once

// Test-only quadrature oracle, independent of the library's special
// functions: tanh-sinh (double-exponential) integration with adaptive
// level refinement. Integrands receive the abscissa together with its
// distances to both endpoints so endpoint-singular densities can be
// evaluated without cancellation.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

// integral of f(x, x - lo, hi - x) over (lo, hi)
template <typename F>
double tanh_sinh(F&& f, double lo, double hi, double tol = 1e-13,
                 int max_level = 14) {
  const double half = 0.5 * (hi - lo);
  auto eval = [&](double t) -> double {
    const double s = 0.5 * M_PI * std::sinh(t);
    const double dl = half * 2.0 / (1.0 + std::exp(-2.0 * s));
    const double dr = half * 2.0 / (1.0 + std::exp(2.0 * s));
    if (dl == 0.0 || dr == 0.0) return 0.0;
    const double ch = std::cosh(s);
    const double w = half * 0.5 * M_PI * std::cosh(t) / (ch * ch);
    if (w < 1e-300) return 0.0;
    return w * f(lo + dl, dl, dr);
  };

  double h = 1.0;
  double integral = eval(0.0);
  {
    for (int k = 1; k <= 7; ++k) integral += eval(k * h) + eval(-k * h);
    integral *= h;
  }
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double added = 0.0;
    const int limit = static_cast<int>(std::ceil(7.0 / h));
    for (int k = 1; k <= limit; k += 2) added += eval(k * h) + eval(-k * h);
    const double refined = 0.5 * integral + h * added;
    const double change = std::fabs(refined - integral);
    integral = refined;
    if (level >= 4 && change <= tol * std::fabs(integral)) return integral;
  }
  return integral;
}

// Beta(a, b) cdf at x by direct quadrature of the density; lgamma comes
// from libm so the oracle shares nothing with the implementation under test.
inline double beta_cdf(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_norm = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double one_minus_x = 1.0 - x;
  auto density = [&](double, double dl, double dr) {
    return std::exp((a - 1.0) * std::log(dl) +
                    (b - 1.0) * std::log(one_minus_x + dr) - log_norm);
  };
  return tanh_sinh(density, 0.0, x);
}

// Radical-inverse construction of the one-dimensional Sobol point with
// absolute index i (Gray-code bit reversal), used as a brute-force check.
inline double sobol1d_reference(std::uint64_t index) {
  const std::uint64_t gray = index ^ (index >> 1);
  double value = 0.0;
  double scale = 0.5;
  for (int b = 0; b < 63; ++b) {
    if ((gray >> b) & 1u) value += scale;
    scale *= 0.5;
  }
  return value;
}

}  // namespace oracle
