#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "misproc/dynamics.hpp"
#include "misproc/graph.hpp"
#include "misproc/log_switch.hpp"
#include "misproc/vertex_set.hpp"

namespace misproc {

/// A trial reported stabilization but its black set is not an MIS.
class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Independent and dominating.
bool verify_mis(const Graph& g, const VertexSet& black);

VertexSet black_set(const StateVector& s);

/// Per-trial seed: word (TrialSeed, 0, trial) of the master coin stream.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

struct ExperimentConfig {
  ProcessKind process = ProcessKind::TwoState;
  std::string graph = "complete:n=2";
  InitPolicy init = InitPolicy::AllWhite;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t max_rounds = 1'000'000;
  std::uint64_t metric_stride = 0;  ///< 0: no per-round metrics
  SwitchParams switch_params{};
  SwitchInit switch_init = SwitchInit::UniformRandom;
  unsigned threads = 1;  ///< 0: hardware concurrency
  bool keep_final_states = false;

  void validate() const;
};

struct Summary {
  std::uint64_t trials = 0;
  std::uint64_t completed = 0;
  std::uint64_t capped = 0;
  std::uint64_t sum = 0;  ///< exact sum of completed stabilization rounds
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation
  double median = 0.0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t q90 = 0;
  std::uint64_t q99 = 0;

  bool operator==(const Summary&) const = default;
};

/// Nearest-rank quantiles; capped trials excluded.
Summary summarize(const std::vector<TrialResult>& trials);
Summary summarize_times(std::vector<std::uint64_t> times, std::uint64_t capped = 0);

struct TailRow {
  std::uint64_t k = 0;
  std::uint64_t count = 0;  ///< #{T >= k * unit}
  double prob = 0.0;
  std::optional<double> ratio;     ///< P_{k+1} / P_k
  std::optional<double> ratio_se;  ///< binomial SE of the conditional ratio
};

/// Empirical tail P[T >= k * unit] for k = 1..max_k. Ratios are reported
/// only where count_k >= 50 (P_k >= 50 / trials).
std::vector<TailRow> tail_decay(const std::vector<std::uint64_t>& times, double unit,
                                std::uint64_t max_k = 8);

struct ExperimentResult {
  ExperimentConfig config;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<TrialResult> trials;
  Summary summary;
  std::vector<TailRow> tail;
  double wall_seconds = 0.0;  ///< not serialized by default
};

/// Builds the graph named by the descriptor (see descriptor.hpp).
ExperimentResult run_experiment(const ExperimentConfig& cfg);
/// Same, on an already constructed graph.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Graph& g);

// Probability checks on stars ----------------------------------------------------

struct ProbabilityCheck {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  std::uint64_t rounds = 0;
  double estimate = 0.0;
  double se = 0.0;
  double bound = 0.0;

  /// estimate >= bound - 3 SE
  bool passes() const { return estimate >= bound - 3.0 * se; }
};

/// ceil(log2(k + 1)).
std::uint64_t ceil_log2_plus1(std::uint64_t k);

/// Star K_{1,k}, all white, ceil(log2(k+1)) rounds; hit when the center is
/// stable black. Bound (2ek)^{-1}.
ProbabilityCheck lemma6_check(std::uint64_t k, std::uint64_t trials, std::uint64_t seed);

/// Disjoint stars K_{1,k_i}, all white, ceil(log2(max k_i + 1)) rounds; hit
/// when some center is stable black. Bound (1/5) min{1, sum (2k_i)^{-1}}.
ProbabilityCheck lemma7_check(const std::vector<std::uint64_t>& ks, std::uint64_t trials,
                              std::uint64_t seed);

}  // namespace misproc
