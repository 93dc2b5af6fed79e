#include "misproc/coins.hpp"

#include <cmath>
#include <limits>

namespace misproc {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

// Retry index for rejection sampling lives above any reachable round.
constexpr unsigned kRetryShift = 48;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t CoinStream::word(Stream stream, std::uint64_t round,
                               std::uint64_t vertex) const {
  const auto tag = static_cast<std::uint32_t>(stream);
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(vertex),
      static_cast<std::uint32_t>(vertex >> 32),
      static_cast<std::uint32_t>(round),
      static_cast<std::uint32_t>((round >> 32) & 0x00FFFFFFu) | (tag << 24)};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = philox4x32(ctr, key);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::uint64_t CoinStream::uniform_below(Stream stream, std::uint64_t round,
                                        std::uint64_t vertex,
                                        std::uint64_t bound) const {
  if (bound <= 1) return 0;
  const std::uint64_t reject_below = (0 - bound) % bound;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t w =
        word(stream, round | (attempt << kRetryShift), vertex);
    const unsigned __int128 m = static_cast<unsigned __int128>(w) * bound;
    if (static_cast<std::uint64_t>(m) >= reject_below) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

std::uint64_t probability_threshold(double prob) {
  if (!(prob > 0.0)) return 0;
  if (prob >= 1.0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::ldexp(prob, 64));
}

std::uint64_t KeyedSequence::next_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t reject_below = (0 - bound) % bound;
  for (;;) {
    const unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    if (static_cast<std::uint64_t>(m) >= reject_below) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

}  // namespace misproc
