#include "contact/random.hpp"

#include <cmath>

namespace contact {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter c, Key k) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Seed derive_seed(Seed base, std::uint64_t index) noexcept {
  return mix64(mix64(base) ^ mix64(index ^ 0x5851F42D4C957F2Dull));
}

CounterStream::CounterStream(Seed seed, std::uint32_t family, std::uint32_t id) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      family_(family),
      id_(id) {}

double CounterStream::uniform(std::uint64_t k) const noexcept {
  // One Philox block yields 128 bits, i.e. two 64-bit halves: draws 2j and 2j+1.
  const std::uint64_t blk = k >> 1;
  const auto out = Philox4x32::block(
      {static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32), id_, family_}, key_);
  const std::uint64_t bits = (k & 1u) == 0u
                                 ? (static_cast<std::uint64_t>(out[0]) << 32) | out[1]
                                 : (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double CounterStream::exponential(std::uint64_t k, double rate) const noexcept {
  return -std::log1p(-uniform(k)) / rate;
}

std::uint64_t SequentialRng::below(std::uint64_t bound) noexcept {
  // Rejection on the top 53 bits keeps the result exactly uniform.
  const std::uint64_t range = std::uint64_t{1} << 53;
  const std::uint64_t limit = range - range % bound;
  for (;;) {
    const auto v = static_cast<std::uint64_t>(uniform() * 0x1.0p53);
    if (v < limit) return v % bound;
  }
}

}  // namespace contact
