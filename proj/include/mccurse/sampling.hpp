#pragma once

// Exact (non-rejection) uniform samplers over the three unit balls.
//
//   L2:   isotropic Gaussian direction scaled by U^{1/n}
//   L1:   exponential magnitudes with random signs, normalized by their sum
//         plus one extra independent exponential
//   LInf: independent uniforms on [-1, 1]
//
// Rejection inside an enclosing box is deliberately not offered; its
// acceptance rate collapses with dimension.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mccurse/rng.hpp"

namespace mccurse::sampling {

enum class BallKind { L1, L2, LInf };

using Point = std::vector<double>;

inline const char* to_string(BallKind kind) {
  switch (kind) {
    case BallKind::L1: return "l1";
    case BallKind::L2: return "l2";
    case BallKind::LInf: return "linf";
  }
  return "?";
}

// One draw, written into out (size n). Norm invariants hold for every draw:
// the final rescale guards the <= 1 contract against last-ulp rounding.
inline void sample_ball_into(BallKind kind, int n, RngStream& rng,
                             std::span<double> out) {
  if (n < 1) throw std::invalid_argument("sample_ball: dimension must be >= 1");
  if (static_cast<int>(out.size()) != n)
    throw std::invalid_argument("sample_ball: output span size mismatch");

  switch (kind) {
    case BallKind::L2: {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
          const double g = rng.gaussian();
          out[i] = g;
          norm2 += g * g;
        }
      } while (norm2 == 0.0);
      const double radius = std::pow(rng.uniform01(), 1.0 / n);
      const double scale = radius / std::sqrt(norm2);
      double check = 0.0;
      for (int i = 0; i < n; ++i) {
        out[i] *= scale;
        check += out[i] * out[i];
      }
      if (check > 1.0) {
        const double fix = 1.0 / std::sqrt(check);
        for (int i = 0; i < n; ++i) out[i] *= fix;
      }
      break;
    }
    case BallKind::L1: {
      double total = 0.0;
      do {
        total = 0.0;
        for (int i = 0; i < n; ++i) {
          const double e = rng.exponential();
          out[i] = e;
          total += e;
        }
        total += rng.exponential();
      } while (total == 0.0);
      double sum_abs = 0.0;
      for (int i = 0; i < n; ++i) {
        const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
        out[i] = sign * (out[i] / total);
        sum_abs += std::fabs(out[i]);
      }
      if (sum_abs > 1.0) {
        const double fix = 1.0 / sum_abs;
        for (int i = 0; i < n; ++i) out[i] *= fix;
      }
      break;
    }
    case BallKind::LInf: {
      for (int i = 0; i < n; ++i) out[i] = rng.uniform(-1.0, 1.0);
      break;
    }
  }
}

inline Point sample_ball(BallKind kind, int n, RngStream& rng) {
  Point p(static_cast<std::size_t>(n));
  sample_ball_into(kind, n, rng, p);
  return p;
}

// Feeds exactly `count` draws to the sink without retaining them; the sink
// sees a deterministic sequence for a fixed (seed, stream_index).
template <typename Sink>
void sample_multisample(BallKind kind, int n, std::uint64_t count,
                        RngStream& rng, Sink&& sink) {
  if (count < 1)
    throw std::invalid_argument("sample_multisample: count must be >= 1");
  Point scratch(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < count; ++i) {
    sample_ball_into(kind, n, rng, scratch);
    sink(std::span<const double>(scratch));
  }
}

}  // namespace mccurse::sampling
