#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "misproc/coins.hpp"
#include "misproc/graph.hpp"
#include "misproc/log_switch.hpp"
#include "misproc/vertex_set.hpp"

namespace misproc {

enum class ProcessKind { TwoState, ThreeState, ThreeColor };

enum class Color : std::uint8_t { White = 0, Black = 1, Black1 = 2, Black0 = 3, Gray = 4 };

inline bool is_black(Color c) {
  return c == Color::Black || c == Color::Black1 || c == Color::Black0;
}

/// Colors a process may use, in canonical order.
std::vector<Color> alphabet(ProcessKind kind);

enum class InitPolicy { AllWhite, AllBlack, UniformRandom, Alternating, AllGray };

std::string to_string(ProcessKind kind);
std::string to_string(Color c);
std::string to_string(InitPolicy policy);
ProcessKind parse_process(const std::string& name);
InitPolicy parse_init(const std::string& name);

struct StateVector {
  ProcessKind process = ProcessKind::TwoState;
  std::vector<Color> colors;
  std::uint64_t round = 0;

  std::size_t size() const { return colors.size(); }
  bool operator==(const StateVector&) const = default;
};

/// Round-0 state. All-black means black1 for the three-state process;
/// alternating cycles through the process alphabet by vertex index;
/// uniform-random reads the Init lane.
StateVector init_states(ProcessKind process, std::size_t n, InitPolicy policy,
                        std::uint64_t seed);

/// Vertices whose next color is drawn at random: black with a black
/// neighbor or white with no black neighbor. For the three-state process
/// stable black vertices (which only flip between black1 and black0) are
/// excluded, as are black0 vertices forced to white.
VertexSet active_set(const Graph& g, const StateVector& s);

/// Active vertices with at most k active neighbors.
VertexSet k_active_set(const Graph& g, const StateVector& s, std::size_t k);

struct StableSets {
  VertexSet stable_black;  ///< I_t
  VertexSet stable_all;    ///< N^+(I_t)
  VertexSet nonstable;     ///< V_t = V \ N^+(I_t)
};

StableSets stable_sets(const Graph& g, const StateVector& s);

/// Black set independent and dominating.
bool is_stabilized(const Graph& g, const StateVector& s);

/// Pure one-round update from round t-1 to t. Every vertex reads only the
/// previous vector and its own keyed coin. `switch_on` carries sigma_{t-1}
/// and must be given exactly for the three-color process.
StateVector step(const Graph& g, const StateVector& s, const CoinStream& coins,
                 const OnOffVector* switch_on = nullptr);

/// Same update restricted to vertices [begin, end), written into `next`.
/// Lets callers evaluate blocks in any order.
void step_block(const Graph& g, const StateVector& s, const CoinStream& coins,
                const OnOffVector* switch_on, Vertex begin, Vertex end,
                StateVector& next);

// Trials -------------------------------------------------------------------------

struct RoundMetrics {
  std::uint64_t round = 0;
  std::size_t blacks = 0;
  std::size_t whites = 0;
  std::size_t grays = 0;
  std::size_t actives = 0;
  std::size_t stable_black = 0;  ///< |I_t|
  std::size_t nonstable = 0;     ///< |V_t|

  bool operator==(const RoundMetrics&) const = default;
};

struct TrialOptions {
  std::uint64_t max_rounds = 1'000'000;
  /// Record metrics every `metric_stride` rounds (plus round 0 and the last
  /// round); 0 disables per-round recording.
  std::uint64_t metric_stride = 1;
  SwitchParams switch_params{};
  SwitchInit switch_init = SwitchInit::UniformRandom;
  /// Re-derive every transition from the rule tables and throw on mismatch.
  bool audit = false;
};

struct TrialResult {
  ProcessKind process = ProcessKind::TwoState;
  std::string graph;  ///< descriptor
  InitPolicy init = InitPolicy::AllWhite;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> stabilization_round;  ///< nullopt when capped
  std::uint64_t rounds_executed = 0;
  std::vector<RoundMetrics> metrics;
  StateVector final_state;

  bool capped() const { return !stabilization_round.has_value(); }
  bool operator==(const TrialResult&) const = default;
};

/// Incremental simulator for one trial. Keeps per-vertex counts of black
/// and black1 neighbors and, for the three-color process, per-vertex
/// histograms of neighbor levels, so one round costs O(n) plus the degree
/// of every vertex that changed.
class Simulation {
 public:
  Simulation(const Graph& g, StateVector initial, std::uint64_t seed,
             std::optional<LevelVector> levels = std::nullopt,
             bool audit = false);

  /// Advances one round (MIS update and switch update in lockstep).
  void advance();

  const StateVector& state() const { return state_; }
  const std::optional<LevelVector>& levels() const { return levels_; }
  std::uint64_t round() const { return state_.round; }
  bool stabilized() const;
  RoundMetrics metrics() const;

 private:
  Color next_color(Vertex u) const;
  void apply_color(Vertex u, Color c);
  void advance_switch();

  const Graph* g_;
  CoinStream coins_;
  StateVector state_;
  std::optional<LevelVector> levels_;
  bool audit_;
  std::uint64_t zeta_threshold_ = 0;
  std::vector<std::uint32_t> black_nbrs_;
  std::vector<std::uint32_t> black1_nbrs_;
  std::vector<std::uint32_t> level_hist_;  // n x 6
  std::vector<std::pair<Vertex, Color>> color_changes_;
  std::vector<std::pair<Vertex, std::uint8_t>> level_changes_;
};

TrialResult run_trial(ProcessKind process, const Graph& g, InitPolicy policy,
                      std::uint64_t seed, const TrialOptions& opts = {},
                      const std::string& graph_descriptor = "");

}  // namespace misproc
