#include <doctest.h>

#include <array>
#include <cstdint>

#include "spinquant/rng.hpp"

using namespace spinquant;

TEST_SUITE("rng") {

TEST_CASE("philox4x32-10 reproduces the published test vectors") {
  using detail::philox4x32_10;

  const auto zero = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du,
                                             0xbc57ac4cu, 0x9b00dbd8u});

  const auto ones = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                  {0xffffffffu, 0xffffffffu});
  CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu,
                                             0xa20bc7c6u, 0x6d5451fdu});

  const auto pi_digits = philox4x32_10(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(pi_digits == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu,
                                                  0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are pure functions of (seed, path, counter)") {
  RngStream a{99, 7, 0};
  RngStream b{99, 7, 0};
  for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
  CHECK(a.draw_counter == 100);

  // resuming from a saved counter continues the same sequence
  RngStream c{99, 7, 50};
  RngStream d{99, 7, 0};
  for (int k = 0; k < 50; ++k) d.next_u64();
  for (int k = 0; k < 20; ++k) CHECK(c.next_u64() == d.next_u64());
}

TEST_CASE("distinct path indices give distinct streams") {
  RngStream a{99, 0, 0};
  RngStream b{99, 1, 0};
  int differing = 0;
  for (int k = 0; k < 64; ++k)
    if (a.next_u64() != b.next_u64()) ++differing;
  CHECK(differing == 64);

  RngStream s1{1, 0, 0};
  RngStream s2{2, 0, 0};
  CHECK(s1.next_u64() != s2.next_u64());
}

TEST_CASE("uniform draws respect their ranges") {
  RngStream rng{123, 5, 0};
  double lo = 1.0, hi = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform_open01();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);  // the draws actually cover the interval
  CHECK(hi > 0.99);
}

}  // TEST_SUITE
