#pragma once

// Distribution laws of linear images of uniform draws on the unit l2 ball,
// and the Kolmogorov-Smirnov machinery used to validate them empirically.
//
// For a rank-m map A, the quadratic form rho = ((A A^T)^{-1} A xi, A xi)
// follows Beta(m/2, (n-m)/2 + 1); for n -> infinity, n*rho tends to
// chi-square(m). Both laws are exposed as cdf evaluators and as seeded
// statistical validators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mccurse/rng.hpp"
#include "mccurse/sampling.hpp"
#include "mccurse/specfun.hpp"

namespace mccurse::dist {

// Projected squared-norm sample; values microscopically outside [0,1] from
// floating error are clamped (and the clamp recorded), excursions beyond
// 1e-9 raise.
struct RhoSample {
  double value;
  double clamp_magnitude;
};

// Dense m x n real matrix of objective rows, rank-checked on construction
// via Cholesky pivots of A A^T (tolerance 1e-10).
class LinearMap {
 public:
  LinearMap(int rows, int cols, std::vector<double> entries)
      : m_(rows), n_(cols), a_(std::move(entries)) {
    if (m_ < 1 || n_ < 1 || m_ > n_)
      throw std::invalid_argument("LinearMap: need 1 <= rows <= cols");
    if (a_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_))
      throw std::invalid_argument("LinearMap: entry count mismatch");
    factorize_gram();
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  double entry(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const double> row(int i) const {
    return {a_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

  // image = A x
  void apply(std::span<const double> x, std::span<double> image) const {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(image.size()) != m_)
      throw std::invalid_argument("LinearMap::apply: size mismatch");
    for (int i = 0; i < m_; ++i) {
      const double* r = a_.data() + static_cast<std::size_t>(i) * n_;
      double acc = 0.0;
      for (int j = 0; j < n_; ++j) acc += r[j] * x[j];
      image[i] = acc;
    }
  }

  // rho = ((A A^T)^{-1} A x, A x) via the cached Cholesky factor
  RhoSample project_rho(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != n_)
      throw std::invalid_argument("project_rho: point dimension mismatch");
    std::vector<double> w(m_), y(m_);
    apply(point, w);
    // forward then backward substitution with L L^T = A A^T
    for (int i = 0; i < m_; ++i) {
      double acc = w[i];
      for (int k = 0; k < i; ++k) acc -= chol_[idx(i, k)] * y[k];
      y[i] = acc / chol_[idx(i, i)];
    }
    for (int i = m_ - 1; i >= 0; --i) {
      double acc = y[i];
      for (int k = i + 1; k < m_; ++k) acc -= chol_[idx(k, i)] * y[k];
      y[i] = acc / chol_[idx(i, i)];
    }
    double rho = 0.0;
    for (int i = 0; i < m_; ++i) rho += y[i] * w[i];
    double clamp = 0.0;
    if (rho < 0.0) {
      clamp = -rho;
      rho = 0.0;
    } else if (rho > 1.0) {
      clamp = rho - 1.0;
      rho = 1.0;
    }
    if (clamp > 1e-9)
      throw std::runtime_error("project_rho: value escapes [0,1] beyond tolerance");
    return {rho, clamp};
  }

  bool rows_orthonormal(double tol = 1e-9) const {
    for (int i = 0; i < m_; ++i)
      for (int j = i; j < m_; ++j) {
        double dot = 0.0;
        for (int k = 0; k < n_; ++k) dot += entry(i, k) * entry(j, k);
        const double want = (i == j) ? 1.0 : 0.0;
        if (std::fabs(dot - want) > tol) return false;
      }
    return true;
  }

 private:
  static constexpr double kRankTol = 1e-10;

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * m_ + j;
  }

  void factorize_gram() {
    std::vector<double> g(static_cast<std::size_t>(m_) * m_);
    double max_diag = 0.0;
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j <= i; ++j) {
        double dot = 0.0;
        for (int k = 0; k < n_; ++k) dot += entry(i, k) * entry(j, k);
        g[idx(i, j)] = dot;
        if (i == j) max_diag = std::fmax(max_diag, dot);
      }
    if (!(max_diag > 0.0))
      throw std::invalid_argument("LinearMap: zero matrix is rank deficient");
    chol_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j <= i; ++j) {
        double acc = g[idx(i, j)];
        for (int k = 0; k < j; ++k) acc -= chol_[idx(i, k)] * chol_[idx(j, k)];
        if (i == j) {
          if (acc <= kRankTol * max_diag)
            throw std::invalid_argument("LinearMap: rows are rank deficient");
          chol_[idx(i, i)] = std::sqrt(acc);
        } else {
          chol_[idx(i, j)] = acc / chol_[idx(j, j)];
        }
      }
    }
  }

  int m_, n_;
  std::vector<double> a_;
  std::vector<double> chol_;  // lower triangular, m x m
};

inline RhoSample project_rho(const LinearMap& map, std::span<const double> point) {
  return map.project_rho(point);
}

// Density of the squared scalar projection: beta_n x^{-1/2} (1-x)^{(n-1)/2}
// on (0,1). The endpoints are a pole (x=0) and a zero of fractional order,
// so they are rejected rather than extended.
inline double pdf_rho_scalar(int n, double x) {
  if (n < 1) throw std::invalid_argument("pdf_rho_scalar: dimension must be >= 1");
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("pdf_rho_scalar: x must lie in (0,1)");
  return specfun::beta_coefficient(n) *
         std::exp(-0.5 * std::log(x) + 0.5 * (n - 1) * std::log1p(-x));
}

// cdf of the squared two-objective image norm: 1 - (1-x)^{n/2} on [0,1],
// extended piecewise to the whole line.
inline double cdf_rho_m2(int n, double x) {
  if (n < 1) throw std::invalid_argument("cdf_rho_m2: dimension must be >= 1");
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return -std::expm1(0.5 * n * std::log1p(-x));
}

// Density of the empirical maximum of N squared image norms:
// (N n / 2)(1-x)^{n/2-1} (1 - (1-x)^{n/2})^{N-1}.
inline double pdf_empirical_max_m2(int n, double count, double x) {
  if (n < 2) throw std::invalid_argument("pdf_empirical_max_m2: dimension must be >= 2");
  if (!(count >= 1.0))
    throw std::invalid_argument("pdf_empirical_max_m2: count must be >= 1");
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("pdf_empirical_max_m2: x must lie in (0,1)");
  const double log1mx = std::log1p(-x);
  const double log_cdf = std::log(-std::expm1(0.5 * n * log1mx));
  return 0.5 * count * n *
         std::exp((0.5 * n - 1.0) * log1mx + (count - 1.0) * log_cdf);
}

struct KsReport {
  double statistic = 0.0;
  std::size_t sample_size = 0;
  double threshold = 0.0;
  bool passed = false;
};

// Asymptotic Kolmogorov critical value c(alpha)/sqrt(N).
inline double ks_critical_value(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("ks_critical_value: alpha must lie in (0,1)");
  if (n == 0) throw std::invalid_argument("ks_critical_value: empty sample");
  double c;
  if (alpha == 0.05)
    c = 1.358;
  else if (alpha == 0.01)
    c = 1.628;
  else
    c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  return c / std::sqrt(static_cast<double>(n));
}

// One-sample Kolmogorov-Smirnov test of `samples` against the cdf functor.
template <typename Cdf>
KsReport ks_test(std::vector<double> samples, Cdf&& cdf, double alpha) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double lo = f - static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n - f;
    d = std::max({d, lo, hi});
  }
  KsReport report;
  report.statistic = d;
  report.sample_size = samples.size();
  report.threshold = ks_critical_value(alpha, samples.size());
  report.passed = d <= report.threshold;
  return report;
}

namespace detail {

// Random matrix with orthonormal rows: modified Gram-Schmidt on Gaussian
// rows. Full rank is required of the inputs only up to probability zero.
inline LinearMap random_orthonormal_map(int m, int n, RngStream& rng) {
  std::vector<double> rows(static_cast<std::size_t>(m) * n);
  for (int attempt = 0; attempt < 16; ++attempt) {
    for (auto& v : rows) v = rng.gaussian();
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      double* ri = rows.data() + static_cast<std::size_t>(i) * n;
      for (int k = 0; k < i; ++k) {
        const double* rk = rows.data() + static_cast<std::size_t>(k) * n;
        double dot = 0.0;
        for (int j = 0; j < n; ++j) dot += ri[j] * rk[j];
        for (int j = 0; j < n; ++j) ri[j] -= dot * rk[j];
      }
      double norm2 = 0.0;
      for (int j = 0; j < n; ++j) norm2 += ri[j] * ri[j];
      if (norm2 < 1e-12) {
        ok = false;
        break;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (int j = 0; j < n; ++j) ri[j] *= inv;
    }
    if (ok) return LinearMap(m, n, rows);
  }
  throw std::runtime_error("random_orthonormal_map: degenerate draws");
}

}  // namespace detail

// Draws `count` uniform points on the l2 ball, projects through a random
// orthonormal rank-m map, and KS-tests rho against Beta(m/2, (n-m)/2 + 1).
inline KsReport validate_fact1(int n, int m, std::size_t count,
                               std::uint64_t seed, double alpha = 0.01) {
  if (m < 1 || m > n) throw std::invalid_argument("validate_fact1: need 1 <= m <= n");
  if (count == 0) throw std::invalid_argument("validate_fact1: count must be >= 1");
  RngStream matrix_rng(seed, 0);
  const LinearMap map = detail::random_orthonormal_map(m, n, matrix_rng);
  RngStream draw_rng(seed, 1);
  std::vector<double> rho;
  rho.reserve(count);
  sampling::sample_multisample(sampling::BallKind::L2, n, count, draw_rng,
                               [&](std::span<const double> x) {
                                 rho.push_back(map.project_rho(x).value);
                               });
  const specfun::BetaParams law{0.5 * m, 0.5 * (n - m) + 1.0};
  return ks_test(std::move(rho),
                 [&](double x) { return specfun::reg_inc_beta(x, law); }, alpha);
}

// KS-tests n*rho against chi-square(m), the limit law of the squared norm
// of the normalized image vector. At small n the test is expected to
// reject; that is the finite-n bias the limit statement quantifies.
inline KsReport validate_fact2(int n, int m, std::size_t count,
                               std::uint64_t seed, double alpha = 0.01) {
  if (m < 1 || m > n) throw std::invalid_argument("validate_fact2: need 1 <= m <= n");
  if (count == 0) throw std::invalid_argument("validate_fact2: count must be >= 1");
  RngStream matrix_rng(seed, 0);
  const LinearMap map = detail::random_orthonormal_map(m, n, matrix_rng);
  RngStream draw_rng(seed, 1);
  std::vector<double> scaled;
  scaled.reserve(count);
  sampling::sample_multisample(sampling::BallKind::L2, n, count, draw_rng,
                               [&](std::span<const double> x) {
                                 scaled.push_back(n * map.project_rho(x).value);
                               });
  const double half_m = 0.5 * m;
  return ks_test(std::move(scaled),
                 [&](double x) { return specfun::reg_lower_gamma(half_m, 0.5 * x); },
                 alpha);
}

}  // namespace mccurse::dist
