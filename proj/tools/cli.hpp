#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "misproc/harness.hpp"
#include "misproc/log_switch.hpp"

namespace misproc::cli {

/// Stable exit-code contract.
enum ExitCode : int {
  kOk = 0,
  kPropertyFail = 1,
  kUsage = 2,
  kSoundness = 3,
  kCappedStrict = 4,
  kIoError = 5,
  kInconclusive = 6,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CommandKind { Run, Sweep, Good, SwitchAudit, Selftest };

struct RunArgs {
  ExperimentConfig cfg;
  std::string out_dir = ".";
  std::string metrics_path;
  std::string plot_path;
  bool strict = false;
  bool timing = false;
};

struct SweepArgs {
  std::vector<std::string> graphs;  ///< explicit descriptors
  std::string family;
  std::vector<std::uint64_t> sizes;
  std::vector<double> probs;
  std::uint64_t clique_size = 0;  ///< 0: round(sqrt(n))
  std::uint64_t graph_seed = 0;
  std::vector<std::string> processes;
  std::vector<std::string> inits;
  ExperimentConfig base;  ///< trials, seed, max_rounds, switch, threads
  std::string out_path = "sweep.csv";
  bool strict = false;

  /// Expanded grid of graph descriptors.
  std::vector<std::string> graph_grid() const;
};

struct GoodArgs {
  std::string graph;
  double p = 0.0;
  bool exact = true;
  std::uint64_t samples = 20;
  std::uint64_t seed = 0;
  std::string out_path = "goodness.json";
  bool require_exact = false;
};

struct AuditArgs {
  std::string graph;
  SwitchParams params{};
  std::uint64_t b = 3;
  std::optional<std::uint64_t> rounds;  ///< default n
  std::uint64_t seed = 0;
  SwitchInit init = SwitchInit::UniformRandom;
  std::string diam = "auto";  ///< auto | yes | no
  std::string out_path = "switch-audit.json";
};

struct Command {
  CommandKind kind = CommandKind::Selftest;
  RunArgs run;
  SweepArgs sweep;
  GoodArgs good;
  AuditArgs audit;
};

/// Parses and validates argv. Throws UsageError naming the offending flag;
/// `--help` output is written to `out` and reported as std::nullopt.
std::optional<Command> parse_args(const std::vector<std::string>& argv, std::ostream& out);

int cmd_run(const RunArgs& args, std::ostream& log);
int cmd_sweep(const SweepArgs& args, std::ostream& log);
int cmd_good(const GoodArgs& args, std::ostream& log);
int cmd_switch_audit(const AuditArgs& args, std::ostream& log);
int cmd_selftest(std::ostream& log);

/// Full driver: parse, dispatch, map exceptions to exit codes.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace misproc::cli
