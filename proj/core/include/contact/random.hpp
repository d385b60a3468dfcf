#pragma once

#include <array>
#include <cstdint>

namespace contact {

using Seed = std::uint64_t;

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A block is a pure function of (counter, key); there is no hidden state, so
/// any draw of any stream can be recomputed independently of the others.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of replica `index` under `base`. Distinct indices give unrelated seeds.
Seed derive_seed(Seed base, std::uint64_t index) noexcept;

/// An addressable random stream: draw k of stream (seed, family, id) is
/// Philox(counter = {k_lo, k_hi, id, family}, key = seed).
class CounterStream {
 public:
  CounterStream(Seed seed, std::uint32_t family, std::uint32_t id) noexcept;

  /// Uniform in [0, 1) with 53 random bits, for draw index `k`.
  double uniform(std::uint64_t k) const noexcept;

  /// Exp(rate) variate for draw index `k`.
  double exponential(std::uint64_t k, double rate) const noexcept;

 private:
  Philox4x32::Key key_;
  std::uint32_t family_;
  std::uint32_t id_;
};

/// Sequential generator over a CounterStream, for code that just wants
/// "the next number" (tree generation, bootstraps). Deterministic per seed.
class SequentialRng {
 public:
  explicit SequentialRng(Seed seed, std::uint32_t family = 0xF00Du) noexcept
      : stream_(seed, family, 0) {}

  double uniform() noexcept { return stream_.uniform(next_++); }
  double exponential(double rate = 1.0) noexcept { return stream_.exponential(next_++, rate); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  CounterStream stream_;
  std::uint64_t next_ = 0;
};

}  // namespace contact
