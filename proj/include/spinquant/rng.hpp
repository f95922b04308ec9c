#pragma once

#include <array>
#include <cstdint>

namespace spinquant {

namespace detail {

// Philox4x32-10 block cipher (Salmon et al., SC'11).  Counter-based: the
// output block is a pure function of (counter, key), which is what makes
// per-path streams reproducible and schedule-independent.
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t m0 = 0xD2511F53u;
  constexpr std::uint32_t m1 = 0xCD9E8D57u;
  constexpr std::uint32_t w0 = 0x9E3779B9u;
  constexpr std::uint32_t w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += w0;
    key[1] += w1;
  }
  return ctr;
}

}  // namespace detail

/// Random stream for one Monte Carlo path.  The sequence is a pure function
/// of (master_seed, path_index): distinct path indices give disjoint Philox
/// counter blocks, so paths may run on any thread in any order.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t path_index = 0;
  std::uint64_t draw_counter = 0;

  std::uint64_t next_u64() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(draw_counter),
        static_cast<std::uint32_t>(draw_counter >> 32),
        static_cast<std::uint32_t>(path_index),
        static_cast<std::uint32_t>(path_index >> 32)};
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32)};
    const auto block = detail::philox4x32_10(ctr, key);
    ++draw_counter;
    return static_cast<std::uint64_t>(block[0]) |
           (static_cast<std::uint64_t>(block[1]) << 32);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0, 1); safe under log().
  double uniform_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }
};

}  // namespace spinquant
