#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "misproc/goodness.hpp"
#include "misproc/harness.hpp"
#include "misproc/log_switch.hpp"

namespace misproc {

inline constexpr const char* kTrialsSchema = "misproc.trials/1";
inline constexpr const char* kRoundsSchema = "misproc.rounds/1";
inline constexpr const char* kSummarySchema = "misproc.summary/1";
inline constexpr const char* kSweepSchema = "misproc.sweep/1";
inline constexpr const char* kGoodnessSchema = "misproc.goodness/1";
inline constexpr const char* kAuditSchema = "misproc.switch-audit/1";

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Summary& s);
nlohmann::json to_json(const std::vector<TailRow>& tail);
nlohmann::json to_json(const TrialResult& t);
nlohmann::json to_json(const GoodnessReport& rep);
nlohmann::json to_json(const SwitchAudit& audit, const AuditOptions& opts);

/// Aggregate JSON document for one experiment. Wall-clock time is
/// included only on request so repeated runs stay byte-identical.
nlohmann::json summary_document(const ExperimentResult& r, bool include_timing = false);

// CSV. Every file starts with "# schema: ..." and "# config: <json>" lines
// followed by a mandatory header row. Graph descriptors use ';' between
// parameters so no field needs quoting.

std::string trials_csv(const ExperimentResult& r);
std::string rounds_csv(const ExperimentResult& r);

struct SweepRow {
  std::string process;
  std::string graph;
  std::string init;
  std::size_t n = 0;
  std::size_t m = 0;
  Summary summary;
};

std::string sweep_csv(const std::vector<SweepRow>& rows, const nlohmann::json& config);

struct CsvTable {
  std::string schema;
  nlohmann::json config;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Parses the CSV dialect above; throws std::runtime_error on a malformed
/// file (missing schema, ragged row).
CsvTable parse_csv(const std::string& text);

/// gnuplot script plotting the stabilization-time histogram and the tail
/// table from the trials CSV at `trials_csv_path`.
std::string plot_script(const ExperimentResult& r, const std::string& trials_csv_path);

}  // namespace misproc
