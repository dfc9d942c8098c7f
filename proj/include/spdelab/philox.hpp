#pragma once
// Philox4x32-10 counter-based generator.  Each 128-bit counter block under a
// 64-bit key produces four 32-bit words; we derive one standard normal per
// block via the cosine Box-Muller transform.  The scheme is fixed per release:
// stored artifacts are only reproducible against the same generator.

#include <array>
#include <cmath>
#include <cstdint>

namespace spde::rng {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

// One N(0,1) draw for lattice position (row, col) of path `path` under `seed`.
inline double standard_normal(std::uint64_t seed, std::uint64_t path,
                              std::uint32_t row, std::uint32_t col) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
      row, col};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto out = philox4x32(ctr, key);
  const std::uint64_t a =
      (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  const std::uint64_t b =
      (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  // u1 in (0,1], u2 in [0,1)
  const double u1 = ((a >> 11) + 1) * 0x1.0p-53;
  const double u2 = (b >> 11) * 0x1.0p-53;
  constexpr double two_pi = 6.283185307179586476925287;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace spde::rng
