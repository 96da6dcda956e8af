#pragma once

// Seeded, chunked experiment harness: empirical-maximum runs over the three
// balls, 2D-image runs over the l2 ball, calibration studies against the
// closed-form probabilities, and the two reference-table reproducers.
//
// Reduction contract: the master seed derives one substream per
// (repetition, chunk); the running maximum reduces associatively over
// chunks, so results are bit-identical for any worker count. Only the
// chunk plan (chunk_size) is part of the reproducibility key.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mccurse/bounds.hpp"
#include "mccurse/distributions.hpp"
#include "mccurse/grids.hpp"
#include "mccurse/rng.hpp"
#include "mccurse/sampling.hpp"

namespace mccurse::experiments {

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  sampling::BallKind ball = sampling::BallKind::L2;
  int n = 1;
  dist::LinearMap objective;         // 1 x n scalar rows, 2 x n image rows
  std::uint64_t budget = 1;          // draws per repetition
  std::uint64_t seed = 0;
  int repetitions = 1;
  std::uint64_t chunk_size = 1u << 16;
  std::optional<double> success_threshold;  // per-repetition eta cut
  std::uint64_t max_total_draws = 1'000'000'000;  // desk-scale guard
  std::size_t scatter_limit = 0;     // image runs: keep the first K images
  unsigned max_workers = 0;          // 0 = hardware concurrency
};

struct SampleStats {
  double empirical_max = 0.0;        // eta over all repetitions
  double boundary_proximity = 0.0;   // kappa = sqrt(eta) for image runs
  std::vector<double> repetition_maxima;
  std::int64_t success_count = 0;    // repetitions with eta > threshold
  std::chrono::duration<double> wall_time{0.0};
  std::vector<std::array<double, 2>> scatter;  // image runs only

  double mean_repetition_max() const {
    double acc = 0.0;
    for (double v : repetition_maxima) acc += v;
    return acc / static_cast<double>(repetition_maxima.size());
  }
};

namespace detail {

inline void validate_common(const ExperimentSpec& spec, int expected_rows) {
  if (spec.n < 1) throw std::invalid_argument("ExperimentSpec: dimension must be >= 1");
  if (spec.budget < 1) throw std::invalid_argument("ExperimentSpec: budget must be >= 1");
  if (spec.repetitions < 1)
    throw std::invalid_argument("ExperimentSpec: repetitions must be >= 1");
  if (spec.chunk_size < 1)
    throw std::invalid_argument("ExperimentSpec: chunk_size must be >= 1");
  if (spec.objective.cols() != spec.n)
    throw std::invalid_argument("ExperimentSpec: objective column count != dimension");
  if (spec.objective.rows() != expected_rows)
    throw std::invalid_argument("ExperimentSpec: objective row count mismatch");
  const double total = static_cast<double>(spec.budget) *
                       static_cast<double>(spec.repetitions);
  if (total > static_cast<double>(spec.max_total_draws))
    throw budget_error("ExperimentSpec: total draw budget exceeds the guard");
}

// unit-norm objective row is what makes eta <= 1 meaningful on the l2 ball;
// box and cross-polytope runs admit arbitrary rows (the diagonal sum is the
// canonical box objective)
inline void validate_scalar(const ExperimentSpec& spec) {
  validate_common(spec, 1);
  if (spec.ball == sampling::BallKind::L2) {
    double norm2 = 0.0;
    for (double v : spec.objective.row(0)) norm2 += v * v;
    if (std::fabs(norm2 - 1.0) > 1e-9)
      throw std::invalid_argument("ExperimentSpec: l2 runs need a unit-norm objective row");
  }
}

inline void validate_image(const ExperimentSpec& spec) {
  validate_common(spec, 2);
  if (spec.ball != sampling::BallKind::L2)
    throw std::invalid_argument("ExperimentSpec: image runs are defined on the l2 ball");
  if (!spec.objective.rows_orthonormal())
    throw std::invalid_argument("ExperimentSpec: image runs need orthonormal rows");
}

// Fixed chunk decomposition of one repetition's budget.
inline std::uint64_t chunks_per_repetition(const ExperimentSpec& spec) {
  return (spec.budget + spec.chunk_size - 1) / spec.chunk_size;
}

// Per-repetition maximum of `value(point)` with one rng substream per chunk.
template <typename ValueFn>
double repetition_max(const ExperimentSpec& spec, int repetition,
                      ValueFn&& value) {
  const std::uint64_t chunks = chunks_per_repetition(spec);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> scratch(static_cast<std::size_t>(spec.n));
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = c * spec.chunk_size;
    const std::uint64_t count = std::min<std::uint64_t>(spec.chunk_size,
                                                        spec.budget - begin);
    RngStream rng(spec.seed,
                  static_cast<std::uint64_t>(repetition) * chunks + c);
    for (std::uint64_t i = 0; i < count; ++i) {
      sampling::sample_ball_into(spec.ball, spec.n, rng, scratch);
      best = std::max(best, value(std::span<const double>(scratch)));
    }
  }
  return best;
}

// Deterministic parallel map over repetitions: results land in indexed
// slots, the reduction below runs in repetition order.
template <typename Work>
void for_each_repetition(const ExperimentSpec& spec, Work&& work) {
  const int reps = spec.repetitions;
  unsigned workers = spec.max_workers ? spec.max_workers
                                      : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(reps)));
  if (workers == 1) {
    for (int r = 0; r < reps; ++r) work(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) work(r);
    });
  for (auto& t : pool) t.join();
}

inline SampleStats assemble(const ExperimentSpec& spec,
                            std::vector<double> maxima,
                            std::chrono::duration<double> elapsed) {
  SampleStats stats;
  stats.repetition_maxima = std::move(maxima);
  stats.empirical_max = -std::numeric_limits<double>::infinity();
  for (double v : stats.repetition_maxima)
    stats.empirical_max = std::max(stats.empirical_max, v);
  if (spec.success_threshold) {
    for (double v : stats.repetition_maxima)
      if (v > *spec.success_threshold) ++stats.success_count;
  }
  stats.wall_time = elapsed;
  return stats;
}

}  // namespace detail

// Empirical maximum of the scalar objective c^T x over `budget` draws per
// repetition; O(1) memory per repetition, deterministic per (seed, chunk plan).
inline SampleStats run_empirical_max(const ExperimentSpec& spec) {
  detail::validate_scalar(spec);
  const auto t0 = std::chrono::steady_clock::now();
  const std::span<const double> row = spec.objective.row(0);
  std::vector<double> maxima(static_cast<std::size_t>(spec.repetitions));
  detail::for_each_repetition(spec, [&](int r) {
    maxima[static_cast<std::size_t>(r)] =
        detail::repetition_max(spec, r, [&](std::span<const double> x) {
          double acc = 0.0;
          for (int j = 0; j < spec.n; ++j) acc += row[j] * x[j];
          return acc;
        });
  });
  auto stats = detail::assemble(spec, std::move(maxima),
                                std::chrono::steady_clock::now() - t0);
  stats.boundary_proximity = stats.empirical_max;
  return stats;
}

// Empirical maximum of the squared image norm ||(c1^T x, c2^T x)||^2; the
// per-repetition maxima are the eta values whose law is F_rho^N.
inline SampleStats run_image2d(const ExperimentSpec& spec) {
  detail::validate_image(spec);
  const auto t0 = std::chrono::steady_clock::now();
  const std::span<const double> c1 = spec.objective.row(0);
  const std::span<const double> c2 = spec.objective.row(1);
  std::vector<double> maxima(static_cast<std::size_t>(spec.repetitions));
  std::vector<std::array<double, 2>> scatter;
  const std::size_t scatter_cap = std::min<std::size_t>(spec.scatter_limit, 100'000);
  if (scatter_cap > 0) scatter.reserve(scatter_cap);
  detail::for_each_repetition(spec, [&](int r) {
    maxima[static_cast<std::size_t>(r)] =
        detail::repetition_max(spec, r, [&](std::span<const double> x) {
          double g1 = 0.0, g2 = 0.0;
          for (int j = 0; j < spec.n; ++j) {
            g1 += c1[j] * x[j];
            g2 += c2[j] * x[j];
          }
          return g1 * g1 + g2 * g2;
        });
  });
  if (scatter_cap > 0) {
    // scatter comes from a replay of repetition 0's leading chunk(s)
    const std::uint64_t chunks = detail::chunks_per_repetition(spec);
    std::vector<double> scratch(static_cast<std::size_t>(spec.n));
    for (std::uint64_t c = 0; c < chunks && scatter.size() < scatter_cap; ++c) {
      RngStream rng(spec.seed, c);
      const std::uint64_t begin = c * spec.chunk_size;
      const std::uint64_t count =
          std::min<std::uint64_t>(spec.chunk_size, spec.budget - begin);
      for (std::uint64_t i = 0; i < count && scatter.size() < scatter_cap; ++i) {
        sampling::sample_ball_into(spec.ball, spec.n, rng, scratch);
        double g1 = 0.0, g2 = 0.0;
        for (int j = 0; j < spec.n; ++j) {
          g1 += c1[j] * scratch[j];
          g2 += c2[j] * scratch[j];
        }
        scatter.push_back({g1, g2});
      }
    }
  }
  auto stats = detail::assemble(spec, std::move(maxima),
                                std::chrono::steady_clock::now() - t0);
  stats.boundary_proximity = std::sqrt(std::max(0.0, stats.empirical_max));
  stats.scatter = std::move(scatter);
  return stats;
}

// Convenience rows: the axis objective e_1 and the diagonal sum objective.
inline dist::LinearMap axis_objective(int n) {
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  row[0] = 1.0;
  return dist::LinearMap(1, n, std::move(row));
}

inline dist::LinearMap diagonal_objective(int n) {
  return dist::LinearMap(1, n, std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

inline dist::LinearMap coordinate_image_objective(int n) {
  if (n < 2)
    throw std::invalid_argument("coordinate_image_objective: dimension must be >= 2");
  std::vector<double> rows(2 * static_cast<std::size_t>(n), 0.0);
  rows[0] = 1.0;
  rows[static_cast<std::size_t>(n) + 1] = 1.0;
  return dist::LinearMap(2, n, std::move(rows));
}

// Table of minimal sample sizes at delta = 0.05, p = 0.95 for the three
// ball families over n in {1, 2, 3, 4, 5, 10, 15}.
struct Table1 {
  std::vector<int> dimensions;
  std::vector<bounds::SampleCount> l2;
  std::vector<bounds::SampleCount> linf;
  std::vector<bounds::SampleCount> l1;
};

inline Table1 reproduce_table1() {
  const bounds::AccuracySpec spec{0.05, 0.95};
  Table1 table;
  table.dimensions = {1, 2, 3, 4, 5, 10, 15};
  for (int n : table.dimensions) {
    table.l2.push_back(bounds::nmin_l2(n, spec));
    table.linf.push_back(bounds::nmin_box_diag(n, spec));
    table.l1.push_back(bounds::nmin_l1(n, spec));
  }
  return table;
}

// Empirical maxima of sum(x_i) on the unit box for the uniform mesh (exact,
// via the analytic corner value), the Sobol sequence, and Monte Carlo
// averaged over `repetitions` runs, for n in {2, 3, 4, 5, 10, 15, 20}.
struct Table2 {
  std::vector<int> dimensions;
  std::vector<double> uniform_grid;
  std::vector<double> sobol;
  std::vector<double> monte_carlo;
};

inline Table2 reproduce_table2(std::uint64_t budget, int repetitions,
                               std::uint64_t seed, unsigned max_workers = 0) {
  if (budget < 1) throw std::invalid_argument("reproduce_table2: budget must be >= 1");
  if (repetitions < 1)
    throw std::invalid_argument("reproduce_table2: repetitions must be >= 1");
  Table2 table;
  table.dimensions = {2, 3, 4, 5, 10, 15, 20};
  std::uint64_t column = 0;
  for (int n : table.dimensions) {
    table.uniform_grid.push_back(
        grids::mesh_from_budget(n, budget).max_coordinate_sum());

    double sobol_best = -static_cast<double>(n);
    grids::sobol_generate(grids::SobolSpec{n, 1, 1, budget},
                          [&](std::span<const double> x) {
                            double acc = 0.0;
                            for (double v : x) acc += v;
                            sobol_best = std::max(sobol_best, acc);
                          });
    table.sobol.push_back(sobol_best);

    ExperimentSpec mc{sampling::BallKind::LInf,
                      n,
                      diagonal_objective(n),
                      budget,
                      seed + column,
                      repetitions};
    mc.max_workers = max_workers;
    table.monte_carlo.push_back(run_empirical_max(mc).mean_repetition_max());
    ++column;
  }
  return table;
}

struct CalibrationRecord {
  double empirical_frequency = 0.0;
  double formula_probability = 0.0;
  double band_3sigma = 0.0;
  int repetitions = 0;
  bool agrees = false;
};

// Runs the experiment R times, counts repetitions whose empirical maximum
// clears the delta threshold, and compares the frequency against the
// closed-form probability within a 3-sigma binomial band.
//
// Scalar runs succeed when eta > 1 - delta; image runs when the best image
// norm exceeds 1 - delta (i.e. eta > (1-delta)^2).
inline CalibrationRecord calibrate_probability(ExperimentSpec spec, double delta,
                                               double formula_probability) {
  if (spec.repetitions < 100)
    throw std::invalid_argument("calibrate_probability: needs >= 100 repetitions");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("calibrate_probability: delta must lie in (0,1]");
  const bool image_run = spec.objective.rows() == 2;
  const double cut = 1.0 - delta;
  spec.success_threshold = image_run ? cut * cut : cut;
  const SampleStats stats = image_run ? run_image2d(spec) : run_empirical_max(spec);
  CalibrationRecord record;
  record.repetitions = spec.repetitions;
  record.formula_probability = formula_probability;
  record.empirical_frequency = static_cast<double>(stats.success_count) /
                               static_cast<double>(spec.repetitions);
  record.band_3sigma =
      3.0 * std::sqrt(formula_probability * (1.0 - formula_probability) /
                      static_cast<double>(spec.repetitions));
  record.agrees = std::fabs(record.empirical_frequency - formula_probability) <=
                  record.band_3sigma;
  return record;
}

}  // namespace mccurse::experiments
