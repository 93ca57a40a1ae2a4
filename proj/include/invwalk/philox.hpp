#pragma once

#include <array>
#include <cstdint>

namespace invwalk {

// Philox4x32-10 (Salmon et al., SC'11): a keyed bijection on 128-bit
// counters. Output i of the generator is philox(key, counter = i).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53;
  constexpr std::uint32_t kM1 = 0xCD9E8D57;
  constexpr std::uint32_t kW0 = 0x9E3779B9;
  constexpr std::uint32_t kW1 = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

/// 64-bit stream for one Monte Carlo trial: key = seed, counter =
/// (block index, trial index). Streams for different trials never overlap,
/// so any partition of trials across threads sees the same numbers.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, trial_(trial) {}

  std::uint64_t next_u64() {
    if (slot_ == 2) {
      const PhiloxCounter out = philox4x32_10(
          {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
           static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32)},
          key_);
      buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
      buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
      ++block_;
      slot_ = 0;
    }
    return buffer_[slot_++];
  }

  /// Uniform on [0, range) by Lemire's multiply-and-reject; range >= 1.
  std::uint64_t uniform(std::uint64_t range) {
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * range;
    auto low = static_cast<std::uint64_t>(wide);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        wide = static_cast<unsigned __int128>(next_u64()) * range;
        low = static_cast<std::uint64_t>(wide);
      }
    }
    return static_cast<std::uint64_t>(wide >> 64);
  }

 private:
  PhiloxKey key_;
  std::uint64_t trial_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int slot_ = 2;
};

}  // namespace invwalk
