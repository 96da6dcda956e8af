#pragma once

// Direction-number initializers for the first 21 Sobol dimensions
// (Joe-Kuo D6 table: primitive polynomial degree, encoded interior
// coefficients, and initial odd m values). Dimension 1 is the plain
// van der Corput sequence in base 2 and needs no entry.

#include <array>
#include <cstdint>

namespace mccurse::grids::detail {

struct SobolDimensionInit {
  int degree;
  std::uint32_t poly;  // interior coefficients a_1 .. a_{s-1}, packed
  std::array<std::uint32_t, 7> m;
};

inline constexpr int kSobolMaxDimension = 21;

// rows for dimensions 2 .. 21
inline constexpr SobolDimensionInit kSobolInit[kSobolMaxDimension - 1] = {
    {1, 0, {1, 0, 0, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0, 0, 0}},
    {4, 4, {1, 3, 5, 13, 0, 0, 0}},
    {5, 2, {1, 1, 5, 5, 17, 0, 0}},
    {5, 4, {1, 1, 5, 5, 5, 0, 0}},
    {5, 7, {1, 1, 7, 11, 19, 0, 0}},
    {5, 11, {1, 1, 5, 1, 1, 0, 0}},
    {5, 13, {1, 1, 1, 3, 11, 0, 0}},
    {5, 14, {1, 3, 5, 5, 31, 0, 0}},
    {6, 1, {1, 3, 3, 9, 7, 49, 0}},
    {6, 13, {1, 1, 1, 15, 21, 21, 0}},
    {6, 16, {1, 3, 1, 13, 27, 49, 0}},
    {6, 19, {1, 1, 1, 15, 7, 5, 0}},
    {6, 22, {1, 3, 1, 15, 13, 25, 0}},
    {6, 25, {1, 1, 5, 5, 19, 61, 0}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
};

}  // namespace mccurse::grids::detail
