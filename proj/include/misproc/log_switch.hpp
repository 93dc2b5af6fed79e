#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "misproc/coins.hpp"
#include "misproc/graph.hpp"

namespace misproc {

/// Parameters of the randomized six-level switch. `a` is the run-length
/// scale used by the audit; `zeta` is P[b = 0] at level 5.
struct SwitchParams {
  double a = 512.0;
  double zeta = 1.0 / 128.0;

  /// The switch guarantees hold for a * zeta == 4.
  bool consistent() const;
  void validate() const;
};

enum class OnOff : std::uint8_t { Off = 0, On = 1 };
using OnOffVector = std::vector<OnOff>;

inline constexpr std::uint8_t kMaxLevel = 5;

struct LevelVector {
  std::vector<std::uint8_t> levels;
  std::uint64_t round = 0;
  double zeta = 1.0 / 128.0;

  bool operator==(const LevelVector&) const = default;
};

enum class SwitchInit { AllFive, UniformRandom };

std::string to_string(SwitchInit policy);
SwitchInit parse_switch_init(const std::string& name);

LevelVector switch_init(std::size_t n, SwitchInit policy, std::uint64_t seed,
                        double zeta = 1.0 / 128.0);

/// One synchronous update of every level. b_t(u) is drawn from the switch
/// lane only for vertices at level 5.
LevelVector switch_step(const Graph& g, const LevelVector& lv,
                        const CoinStream& coins);

/// on for levels 0..2, off for 3..5.
inline OnOff sigma_of(std::uint8_t level) {
  return level <= 2 ? OnOff::On : OnOff::Off;
}
OnOffVector sigma(const LevelVector& lv);

// Run-length audit -------------------------------------------------------------

enum class SwitchProperty { S1, S2, S3 };

struct SwitchViolation {
  SwitchProperty property;
  Vertex vertex;
  std::uint64_t start_round;  ///< first round of the offending run
  std::uint64_t length;
  bool truncated;     ///< run reaches the end of the history
  bool past_horizon;  ///< run starts after round n; reported, not failed
};

struct RunRecord {
  OnOff value;
  std::uint64_t start_round;
  std::uint64_t length;
  bool truncated;
};

struct AuditOptions {
  double a = 512.0;
  std::uint64_t b = 3;
  bool diam_le_2 = false;
  std::size_t n = 0;  ///< ln n uses this n; 0 means history width
  /// First round from which on-runs are held to length <= b.
  std::uint64_t s3_start = 7;
  bool keep_runs = false;
};

struct SwitchAudit {
  std::size_t n = 0;
  std::uint64_t rounds = 0;  ///< history covers rounds 0..rounds-1
  double s1_max_off = 0.0;   ///< a ln n
  double s2_min_off = 0.0;   ///< (a/6) ln n
  std::vector<std::optional<std::uint64_t>> burn_in;  ///< per-vertex S2 start
  std::vector<std::vector<RunRecord>> runs;           ///< when keep_runs
  std::vector<SwitchViolation> violations;

  std::size_t count(SwitchProperty p, bool include_past_horizon = false) const;
  /// Violations inside the guaranteed horizon (rounds <= n).
  bool passed() const;
};

/// Audits a per-round history of switch outputs, history[t][u] = sigma_t(u).
SwitchAudit run_length_audit(std::span<const OnOffVector> history,
                             const AuditOptions& opts);

/// Convenience driver: runs the switch for `rounds` steps from `init` and
/// returns the sigma history including round 0.
std::vector<OnOffVector> switch_history(const Graph& g, LevelVector init,
                                        const CoinStream& coins,
                                        std::uint64_t rounds);

}  // namespace misproc
