#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Streams are
// addressed by (seed, stream id), so any sample of any ensemble can be
// generated independently of scheduling order: determinism across worker
// counts falls out of the addressing.

#include <cstdint>

namespace remo {

struct Philox4x32State {
  std::uint32_t v[4];
};

// One 10-round block: counter (4 words) + key (2 words) -> 4 output words.
Philox4x32State philox4x32_10(const std::uint32_t counter[4], const std::uint32_t key[2]);

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double next_double();

  // Standard normal via Box-Muller (second value cached).
  double next_gaussian();

 private:
  void refill();
  std::uint32_t key_[2];
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t block_ = 0;
  Philox4x32State buffer_{};
  int available_ = 0;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace remo
