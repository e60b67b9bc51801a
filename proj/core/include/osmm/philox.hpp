#pragma once

// Philox4x64-10 counter-based generator, output-compatible with NumPy's
// Philox bit generator. Streams are cheap to fork: a (seed, stream) pair
// keys an independent sequence, so parallel consumers never share state.

#include <array>
#include <cstdint>

#include "osmm/common.hpp"

namespace osmm {

namespace detail {

inline void philox_round(std::array<u64, 4>& ctr, const std::array<u64, 2>& key) {
  constexpr u64 M0 = 0xD2E7470EE14C6C93ull;
  constexpr u64 M1 = 0xCA5A826395121157ull;
  const unsigned __int128 p0 = static_cast<unsigned __int128>(M0) * ctr[0];
  const unsigned __int128 p1 = static_cast<unsigned __int128>(M1) * ctr[2];
  const u64 hi0 = static_cast<u64>(p0 >> 64), lo0 = static_cast<u64>(p0);
  const u64 hi1 = static_cast<u64>(p1 >> 64), lo1 = static_cast<u64>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

inline std::array<u64, 4> philox4x64(std::array<u64, 4> counter, std::array<u64, 2> key) {
  constexpr u64 W0 = 0x9E3779B97F4A7C15ull;
  constexpr u64 W1 = 0xBB67AE8584CAA73Bull;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += W0;
      key[1] += W1;
    }
    detail::philox_round(counter, key);
  }
  return counter;
}

// Deterministic stream of draws identified by (seed, stream).
class PhiloxStream {
 public:
  explicit PhiloxStream(u64 seed, u64 stream = 0) : key_{seed, stream} {}

  u64 next_u64() {
    if (pos_ == 4) refill();
    return block_[pos_++];
  }

  // Uniform draw from [0, bound) by rejection; exact, no modulo bias.
  u64 next_below(u64 bound) {
    if (bound == 0) throw input_error("PhiloxStream: bound must be positive");
    if (bound == 1) return 0;
    const u64 zone = ~u64{0} - (~u64{0} % bound + 1) % bound;
    for (;;) {
      const u64 v = next_u64();
      if (v <= zone || zone == ~u64{0}) return v % bound;
    }
  }

  bool next_bit() {
    if (bits_left_ == 0) {
      bit_buf_ = next_u64();
      bits_left_ = 64;
    }
    const bool b = bit_buf_ & 1;
    bit_buf_ >>= 1;
    --bits_left_;
    return b;
  }

 private:
  // Advance the 256-bit counter, then generate, matching NumPy's stream
  // order: a stream seeded with counter c emits the block for c + 1 first.
  void refill() {
    for (int i = 0; i < 4; ++i) {
      if (++ctr_[static_cast<std::size_t>(i)] != 0) break;
    }
    block_ = philox4x64(ctr_, key_);
    pos_ = 0;
  }

  std::array<u64, 2> key_;
  std::array<u64, 4> ctr_{0, 0, 0, 0};
  std::array<u64, 4> block_{};
  int pos_ = 4;
  u64 bit_buf_ = 0;
  int bits_left_ = 0;
};

// One-shot mix for deriving sub-seeds from a base seed and a tag.
inline u64 mix_seed(u64 seed, u64 tag) {
  return philox4x64({tag, 0, 0, 0}, {seed, 0x6f736d6d})[0];
}

}  // namespace osmm
