#pragma once

#include <array>
#include <cstdint>

namespace misproc {

/// Purpose tags for keyed randomness. Each consumer draws from its own
/// stream so that adding a consumer never shifts another one's draws.
enum class Stream : std::uint32_t {
  Init = 1,
  Color = 2,
  Switch = 3,
  SwitchInit = 4,
  Graph = 5,
  TrialSeed = 6,
  Sampling = 7,
};

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// Counter-mode coin source. `word(stream, round, vertex)` is a pure
/// function of the master seed and its arguments.
class CoinStream {
 public:
  explicit CoinStream(std::uint64_t master_seed) : seed_(master_seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t word(Stream stream, std::uint64_t round,
                     std::uint64_t vertex) const;

  /// Fair bit: the top bit of the word.
  bool fair_bit(Stream stream, std::uint64_t round,
                std::uint64_t vertex) const {
    return (word(stream, round, vertex) >> 63) != 0;
  }

  /// True with probability `threshold / 2^64`.
  bool below(Stream stream, std::uint64_t round, std::uint64_t vertex,
             std::uint64_t threshold) const {
    return word(stream, round, vertex) < threshold;
  }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection;
  /// retries are addressed through the high bits of `round`.
  std::uint64_t uniform_below(Stream stream, std::uint64_t round,
                              std::uint64_t vertex, std::uint64_t bound) const;

  /// Uniform double in [0, 1) with 53 bits.
  double uniform01(Stream stream, std::uint64_t round,
                   std::uint64_t vertex) const {
    return static_cast<double>(word(stream, round, vertex) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

/// 64-bit threshold for a Bernoulli(prob) draw via `CoinStream::below`.
std::uint64_t probability_threshold(double prob);

/// Sequential reader over one keyed lane, for consumers that need an
/// unbounded number of draws (graph generators, samplers).
class KeyedSequence {
 public:
  KeyedSequence(const CoinStream& coins, Stream stream, std::uint64_t lane)
      : coins_(coins), stream_(stream), lane_(lane) {}

  std::uint64_t next() { return coins_.word(stream_, lane_, counter_++); }
  double next01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t next_below(std::uint64_t bound);

 private:
  CoinStream coins_;
  Stream stream_;
  std::uint64_t lane_;
  std::uint64_t counter_ = 0;
};

}  // namespace misproc
