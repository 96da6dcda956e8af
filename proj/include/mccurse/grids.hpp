#pragma once

// Deterministic point sets over the unit box [-1,1]^n: interior uniform
// meshes and Sobol low-discrepancy sequences with skip/leap selection.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mccurse/sobol_directions.hpp"

namespace mccurse::grids {

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interior mesh with M points per axis at coordinates -1 + k*Delta,
// k = 1..M, cell size Delta = 2/(M+1); the boundary is never covered.
struct UniformMesh {
  int n = 1;
  std::int64_t points_per_axis = 1;

  double cell_size() const { return 2.0 / static_cast<double>(points_per_axis + 1); }
  double cardinality() const {
    return std::pow(static_cast<double>(points_per_axis), n);
  }
  // max of sum(x_i) over the mesh, attained at the all-max corner
  double max_coordinate_sum() const { return n * (1.0 - cell_size()); }
};

namespace detail {

// true when m^n >= budget, overflow-safe
inline bool ipow_at_least(std::int64_t m, int n, std::uint64_t budget) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < n; ++i) {
    acc *= static_cast<unsigned __int128>(m);
    if (acc >= budget) return true;
  }
  return acc >= budget;
}

}  // namespace detail

// Smallest per-axis count M with M^n >= budget, i.e. ceil(budget^{1/n}).
inline UniformMesh mesh_from_budget(int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("mesh_from_budget: dimension must be >= 1");
  if (budget < 1) throw std::invalid_argument("mesh_from_budget: budget must be >= 1");
  std::int64_t m = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<double>(budget), 1.0 / n)));
  m = std::max<std::int64_t>(m - 2, 1);
  while (!detail::ipow_at_least(m, n, budget)) ++m;
  return UniformMesh{n, m};
}

// Feeds all M^n mesh points in lexicographic order. Enumerations beyond
// 1e9 points are refused; at that scale the analytic maximum is the tool.
template <typename Sink>
void mesh_iterate(const UniformMesh& mesh, Sink&& sink) {
  if (mesh.n < 1 || mesh.points_per_axis < 1)
    throw std::invalid_argument("mesh_iterate: invalid mesh");
  constexpr double kGuard = 1e9;
  if (mesh.cardinality() > kGuard)
    throw budget_error("mesh_iterate: cardinality exceeds enumeration guard");
  const double delta = mesh.cell_size();
  std::vector<std::int64_t> index(static_cast<std::size_t>(mesh.n), 1);
  std::vector<double> point(static_cast<std::size_t>(mesh.n));
  for (int i = 0; i < mesh.n; ++i) point[i] = -1.0 + delta;
  for (;;) {
    sink(std::span<const double>(point));
    int axis = mesh.n - 1;
    while (axis >= 0 && index[axis] == mesh.points_per_axis) {
      index[axis] = 1;
      point[axis] = -1.0 + delta;
      --axis;
    }
    if (axis < 0) return;
    ++index[axis];
    point[axis] = -1.0 + static_cast<double>(index[axis]) * delta;
  }
}

// Sobol sequence plan: emit `length` points with absolute indices
// skip, skip+leap, skip+2*leap, ... Index 0 is the origin point.
struct SobolSpec {
  int n = 1;
  std::uint64_t skip = 1;
  std::uint64_t leap = 1;
  std::uint64_t length = 0;
};

// Gray-code Sobol generator over [0,1)^n with 32-bit direction integers.
// Supports O(1) incremental stepping and regeneration by absolute index,
// which is what allows leaped and partitioned emission to agree.
class SobolSequence {
 public:
  static constexpr int kMaxDimension = detail::kSobolMaxDimension;
  static constexpr int kBits = 32;

  explicit SobolSequence(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SobolSequence: dimension must be >= 1");
    if (n > kMaxDimension)
      throw std::invalid_argument("SobolSequence: dimension exceeds direction table");
    v_.assign(static_cast<std::size_t>(n) * kBits, 0);
    // first dimension: van der Corput, m_k = 1
    for (int k = 0; k < kBits; ++k) v_[k] = 1u << (kBits - 1 - k);
    for (int dim = 1; dim < n; ++dim) {
      const auto& init = detail::kSobolInit[dim - 1];
      const int s = init.degree;
      std::uint32_t* v = v_.data() + static_cast<std::size_t>(dim) * kBits;
      for (int k = 0; k < s; ++k) v[k] = init.m[k] << (kBits - 1 - k);
      for (int k = s; k < kBits; ++k) {
        std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
        for (int j = 1; j < s; ++j)
          if ((init.poly >> (s - 1 - j)) & 1u) value ^= v[k - j];
        v[k] = value;
      }
    }
    state_.assign(static_cast<std::size_t>(n), 0);
  }

  int dimension() const { return n_; }

  // point with absolute index (XOR of direction integers over the set bits
  // of the Gray code of the index)
  void point_at(std::uint64_t index, std::span<double> out) {
    seek(index);
    current(out);
  }

  // position the generator so the next call to `next` emits `index`
  void seek(std::uint64_t index) {
    if (index >> kBits)
      throw std::invalid_argument("SobolSequence: index exceeds 2^32 range");
    const std::uint32_t gray =
        static_cast<std::uint32_t>(index) ^ static_cast<std::uint32_t>(index >> 1);
    for (int dim = 0; dim < n_; ++dim) {
      std::uint32_t acc = 0;
      const std::uint32_t* v = v_.data() + static_cast<std::size_t>(dim) * kBits;
      for (int b = 0; b < kBits; ++b)
        if ((gray >> b) & 1u) acc ^= v[b];
      state_[dim] = acc;
    }
    index_ = index;
  }

  // emit the current point and advance by one index
  void next(std::span<double> out) {
    current(out);
    int flip = 0;
    std::uint64_t i = index_;
    while (i & 1u) {
      i >>= 1;
      ++flip;
    }
    if (flip >= kBits)
      throw std::invalid_argument("SobolSequence: sequence exhausted");
    for (int dim = 0; dim < n_; ++dim)
      state_[dim] ^= v_[static_cast<std::size_t>(dim) * kBits + flip];
    ++index_;
  }

 private:
  void current(std::span<double> out) const {
    if (static_cast<int>(out.size()) != n_)
      throw std::invalid_argument("SobolSequence: output span size mismatch");
    for (int dim = 0; dim < n_; ++dim)
      out[dim] = static_cast<double>(state_[dim]) * 0x1.0p-32;
  }

  int n_;
  std::vector<std::uint32_t> v_;  // direction integers, n x kBits
  std::vector<std::uint32_t> state_;
  std::uint64_t index_ = 0;
};

// Emits spec.length points mapped affinely onto [-1,1]^n (x = 2u - 1).
template <typename Sink>
void sobol_generate(const SobolSpec& spec, Sink&& sink) {
  if (spec.leap < 1) throw std::invalid_argument("sobol_generate: leap must be >= 1");
  SobolSequence seq(spec.n);
  std::vector<double> u(static_cast<std::size_t>(spec.n));
  std::vector<double> x(static_cast<std::size_t>(spec.n));
  if (spec.leap == 1) seq.seek(spec.skip);
  for (std::uint64_t k = 0; k < spec.length; ++k) {
    if (spec.leap == 1)
      seq.next(u);
    else
      seq.point_at(spec.skip + k * spec.leap, u);
    for (int i = 0; i < spec.n; ++i) x[i] = 2.0 * u[i] - 1.0;
    sink(std::span<const double>(x));
  }
}

}  // namespace mccurse::grids
