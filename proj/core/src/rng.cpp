#include "remo/rng.hpp"

#include <cmath>

namespace remo {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::uint32_t c[4], const std::uint32_t k[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
  const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
  c[0] = n0;
  c[1] = lo1;
  c[2] = n2;
  c[3] = lo0;
}

}  // namespace

Philox4x32State philox4x32_10(const std::uint32_t counter[4], const std::uint32_t key[2]) {
  std::uint32_t c[4] = {counter[0], counter[1], counter[2], counter[3]};
  std::uint32_t k[2] = {key[0], key[1]};
  for (int r = 0; r < 10; ++r) {
    round_once(c, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return {{c[0], c[1], c[2], c[3]}};
}

void PhiloxStream::refill() {
  const std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                                static_cast<std::uint32_t>(block_ >> 32), stream_lo_,
                                stream_hi_};
  buffer_ = philox4x32_10(ctr, key_);
  ++block_;
  available_ = 4;
}

std::uint32_t PhiloxStream::next_u32() {
  if (available_ == 0) refill();
  return buffer_.v[4 - available_--];
}

std::uint64_t PhiloxStream::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double PhiloxStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double PhiloxStream::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // Box-Muller; u1 in (0, 1] keeps the log finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  cached_gaussian_ = r * std::sin(theta);
  has_cached_gaussian_ = true;
  return r * std::cos(theta);
}

}  // namespace remo
