#pragma once

// Closed-form sample-complexity results for uniform random search over the
// unit l2 / l1 / linf balls, plus the boundary-coverage statistics of the
// two-objective image of the l2 ball: minimal sample sizes, success
// probabilities, mode and expectation of the empirical maximum, and grid
// cardinalities.
//
// Every denominator of the form ln(1 - eps) with tiny eps goes through
// log1p; raw evaluation loses all precision once eps drops below ~1e-8,
// which happens already at n = 10 for the interesting accuracy levels.

#include <cmath>
#include <stdexcept>

#include "mccurse/specfun.hpp"

namespace mccurse::bounds {

// Relative accuracy and confidence of a sample-size query.
struct AccuracySpec {
  double delta;  // in (0, 1)
  double p;      // in (0, 1)
};

inline void validate(const AccuracySpec& s) {
  if (!(s.delta > 0.0 && s.delta < 1.0))
    throw std::invalid_argument("AccuracySpec: delta must lie in (0,1)");
  if (!(s.p > 0.0 && s.p < 1.0))
    throw std::invalid_argument("AccuracySpec: p must lie in (0,1)");
}

// Sample counts are exact integers below 2^53 and scientific magnitudes
// above; the ceiling is applied exactly once, here.
struct SampleCount {
  double value = 0.0;
  bool is_ceiled = false;

  static SampleCount ceil_of(double x) {
    constexpr double kExactLimit = 9007199254740992.0;  // 2^53
    const double c = std::ceil(x);
    if (c < kExactLimit) return {c, true};
    return {x, false};
  }

  static SampleCount raw(double x) { return {x, false}; }
};

// Spherical cap of height h on a radius-r ball in dimension n.
struct CapSpec {
  double r;
  double h;
  int n;
};

namespace detail {

inline void check_dimension(int n, int min_dim, const char* what) {
  if (n < min_dim) throw std::invalid_argument(what);
}

// ln(1 - p), the shared numerator of the N_min formulas.
inline double log_one_minus(double p) { return std::log1p(-p); }

}  // namespace detail

// P{eta > 1 - delta} after `count` draws on the l2 ball: the per-draw tail
// probability is half of I(2d - d^2; (n+1)/2, 1/2), evaluated directly so
// the bracket [1/2 + 1/2 I((1-d)^2; 1/2, (n+1)/2)] keeps full precision
// when it sits within 1e-10 of one.
inline double prob_empirical_max_l2(int n, double delta, double count) {
  detail::check_dimension(n, 1, "prob_empirical_max_l2: dimension must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("prob_empirical_max_l2: delta must lie in (0,1]");
  if (!(count >= 1.0))
    throw std::invalid_argument("prob_empirical_max_l2: count must be >= 1");
  const double tail =
      specfun::reg_inc_beta(delta * (2.0 - delta), {0.5 * (n + 1), 0.5});
  return -std::expm1(count * std::log1p(-0.5 * tail));
}

// Minimal sample size for a delta-accurate empirical maximum of a linear
// function on the unit l2 ball, with confidence p.
inline SampleCount nmin_l2(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 1, "nmin_l2: dimension must be >= 1");
  validate(spec);
  const double tail = specfun::reg_inc_beta(spec.delta * (2.0 - spec.delta),
                                            {0.5 * (n + 1), 0.5});
  return SampleCount::ceil_of(detail::log_one_minus(spec.p) /
                              std::log1p(-0.5 * tail));
}

struct L2LowerBounds {
  SampleCount n_appr;         // closed-form lower bound
  SampleCount n_appr_simple;  // its further Stirling-style simplification
};

// Lower bounds N_appr and N~_appr for nmin_l2; both are returned un-ceiled
// and satisfy N~_appr <= N_appr <= nmin_l2.
inline L2LowerBounds nmin_l2_lower(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 1, "nmin_l2_lower: dimension must be >= 1");
  validate(spec);
  const double half_pow =
      0.5 * (n + 1) * std::log(spec.delta * (2.0 - spec.delta)) -
      std::log1p(-spec.delta);
  const double log_eps = half_pow - specfun::log_beta(0.5, 0.5 * (n + 1)) -
                         std::log(static_cast<double>(n + 1));
  const double n_appr =
      detail::log_one_minus(spec.p) / std::log1p(-std::exp(log_eps));
  const double log_eps_simple =
      half_pow - 0.5 * std::log(2.0 * M_PI * (n + 1));
  const double n_simple =
      -detail::log_one_minus(spec.p) * std::exp(-log_eps_simple);
  return {SampleCount::raw(n_appr), SampleCount::raw(n_simple)};
}

// Probability that a uniform draw on the radius-r ball lands in the cap of
// height h: (1/2) I((2rh - h^2)/r^2; (n+1)/2, 1/2). Caps above a
// hemisphere (h > r) are rejected.
inline double cap_success_probability(const CapSpec& cap) {
  detail::check_dimension(cap.n, 1, "cap_success_probability: dimension must be >= 1");
  if (!(cap.r > 0.0))
    throw std::invalid_argument("cap_success_probability: radius must be > 0");
  if (!(cap.h >= 0.0 && cap.h <= cap.r))
    throw std::domain_error("cap_success_probability: height must lie in [0, r]");
  const double x = cap.h * (2.0 * cap.r - cap.h) / (cap.r * cap.r);
  return 0.5 * specfun::reg_inc_beta(std::fmin(x, 1.0), {0.5 * (cap.n + 1), 0.5});
}

// Minimal sample size so that, with confidence p, at least one of N draws
// maps delta-close to the boundary of the 2D image of the l2 ball.
inline SampleCount nmin_multiobjective(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 2, "nmin_multiobjective: dimension must be >= 2");
  validate(spec);
  const double log_eps = 0.5 * n * std::log(spec.delta * (2.0 - spec.delta));
  return SampleCount::ceil_of(detail::log_one_minus(spec.p) /
                              std::log1p(-std::exp(log_eps)));
}

// Small-delta approximation -ln(1-p) / (2d - d^2)^{n/2}.
inline double nmin_multiobjective_approx(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 2, "nmin_multiobjective_approx: dimension must be >= 2");
  validate(spec);
  const double log_eps = 0.5 * n * std::log(spec.delta * (2.0 - spec.delta));
  return -detail::log_one_minus(spec.p) * std::exp(-log_eps);
}

// Mode of the empirical-maximum distribution of the squared image norm:
// x_max = 1 - ((n-2)/(nN-2))^{2/n}.
inline double mode_empirical_max(int n, double count) {
  detail::check_dimension(n, 3, "mode_empirical_max: dimension must be >= 3");
  if (!(count >= 1.0))
    throw std::invalid_argument("mode_empirical_max: count must be >= 1");
  const double log_ratio =
      std::log(static_cast<double>(n - 2)) - std::log(n * count - 2.0);
  return -std::expm1((2.0 / n) * log_ratio);
}

// Large-n approximation 1 - N^{-2/n}.
inline double mode_empirical_max_approx(int n, double count) {
  detail::check_dimension(n, 3, "mode_empirical_max_approx: dimension must be >= 3");
  if (!(count >= 1.0))
    throw std::invalid_argument("mode_empirical_max_approx: count must be >= 1");
  return -std::expm1(-(2.0 / n) * std::log(count));
}

// Expectation of the same empirical maximum: E = 1 - (2/n) B(2/n, N+1).
inline double expect_empirical_max(int n, double count) {
  detail::check_dimension(n, 2, "expect_empirical_max: dimension must be >= 2");
  if (!(count >= 1.0))
    throw std::invalid_argument("expect_empirical_max: count must be >= 1");
  const double a = 2.0 / n;
  return 1.0 - a * std::exp(specfun::log_beta(a, count + 1.0));
}

inline double expect_empirical_max_approx(int n, double count) {
  detail::check_dimension(n, 2, "expect_empirical_max_approx: dimension must be >= 2");
  if (!(count >= 1.0))
    throw std::invalid_argument("expect_empirical_max_approx: count must be >= 1");
  return -std::expm1(-(2.0 / n) * std::log(count));
}

// Axis-aligned objective on the unit box: dimension-free
// N_min = ceil(ln(1-p) / ln(1 - delta/2)).
inline SampleCount nmin_box_axis(const AccuracySpec& spec) {
  validate(spec);
  return SampleCount::ceil_of(detail::log_one_minus(spec.p) /
                              std::log1p(-0.5 * spec.delta));
}

// Diagonal objective sum(x_i) on the unit box; requires delta <= 1/n so
// the corner set {sum x_i >= n(1-delta)} is a simplex.
inline SampleCount nmin_box_diag(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 1, "nmin_box_diag: dimension must be >= 1");
  validate(spec);
  if (spec.delta > 1.0 / n)
    throw std::invalid_argument("nmin_box_diag: requires delta <= 1/n");
  const double log_eps = n * (std::log(static_cast<double>(n)) +
                              std::log(spec.delta) - std::log(2.0)) -
                         specfun::log_gamma(n + 1.0);
  return SampleCount::ceil_of(detail::log_one_minus(spec.p) /
                              std::log1p(-std::exp(log_eps)));
}

// Stirling-style closed form sqrt(2 pi n) (-ln(1-p)) / (delta e / 2)^n.
// This tracks nmin_box_diag to within the factor exp(1/(12n)) for small
// delta; it is an approximation, not a one-sided bound.
inline double nmin_box_diag_stirling(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 1, "nmin_box_diag_stirling: dimension must be >= 1");
  validate(spec);
  const double log_eps =
      n * (std::log(spec.delta) + 1.0 - std::log(2.0)) -
      0.5 * std::log(2.0 * M_PI * n);
  return -detail::log_one_minus(spec.p) * std::exp(-log_eps);
}

// Axis objective on the unit l1 ball (cross-polytope):
// N_min = ceil(ln(1-p) / ln(1 - delta^n / 2)).
inline SampleCount nmin_l1(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 1, "nmin_l1: dimension must be >= 1");
  validate(spec);
  const double log_eps = n * std::log(spec.delta) - std::log(2.0);
  return SampleCount::ceil_of(detail::log_one_minus(spec.p) /
                              std::log1p(-std::exp(log_eps)));
}

// Small-delta approximation -ln(1-p) / (delta^n / 2).
inline double nmin_l1_approx(int n, const AccuracySpec& spec) {
  detail::check_dimension(n, 1, "nmin_l1_approx: dimension must be >= 1");
  validate(spec);
  const double log_eps = n * std::log(spec.delta) - std::log(2.0);
  return -detail::log_one_minus(spec.p) * std::exp(-log_eps);
}

// Number of interior mesh points needed for a delta-accurate uniform grid
// on the unit box: (2/delta - 1)^n.
inline SampleCount uniform_grid_cardinality(int n, double delta) {
  detail::check_dimension(n, 1, "uniform_grid_cardinality: dimension must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("uniform_grid_cardinality: delta must lie in (0,1]");
  double base = 2.0 / delta - 1.0;
  const double snapped = std::nearbyint(base);
  if (std::fabs(base - snapped) <= 1e-9 * std::fmax(1.0, snapped)) base = snapped;
  return SampleCount::ceil_of(std::pow(base, n));
}

}  // namespace mccurse::bounds
