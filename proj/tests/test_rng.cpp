#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "mccurse/rng.hpp"

using namespace mccurse;

TEST_CASE("philox 4x32-10 known-answer vectors") {
  // canonical counter/key test vectors for the block function
  const auto zero = detail::philox_block({0, 0, 0, 0}, {0, 0});
  CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du,
                                             0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = detail::philox_block(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu,
                                             0xa20bc7c6u, 0x6d5451fdu});
  const auto pi = detail::philox_block(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu,
                                           0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams replay exactly") {
  RngStream a(0xDEADBEEFu, 7);
  RngStream b(0xDEADBEEFu, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices decorrelate") {
  RngStream a(42, 0);
  RngStream b(42, 1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i)
    if (a.next_u32() == b.next_u32()) ++equal;
  CHECK(equal <= 2);
}

TEST_CASE("uniform01 lives in [0,1) with sane moments") {
  RngStream rng(7, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == Catch::Approx(0.5).margin(0.005));
  CHECK(var == Catch::Approx(1.0 / 12.0).margin(0.002));
}

TEST_CASE("gaussian and exponential moments") {
  RngStream rng(11, 0);
  const int n = 200000;
  double gsum = 0.0, gsum2 = 0.0, esum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    gsum += g;
    gsum2 += g * g;
    esum += rng.exponential();
  }
  CHECK(gsum / n == Catch::Approx(0.0).margin(0.01));
  CHECK(gsum2 / n == Catch::Approx(1.0).margin(0.02));
  CHECK(esum / n == Catch::Approx(1.0).margin(0.01));
}

TEST_CASE("stream identity is recorded") {
  RngStream rng(123, 456);
  CHECK(rng.seed() == 123);
  CHECK(rng.stream_index() == 456);
}
