#include "misproc/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace misproc {

std::vector<Color> alphabet(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::TwoState:
      return {Color::Black, Color::White};
    case ProcessKind::ThreeState:
      return {Color::Black1, Color::Black0, Color::White};
    case ProcessKind::ThreeColor:
      return {Color::Black, Color::White, Color::Gray};
  }
  return {};
}

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::TwoState: return "two-state";
    case ProcessKind::ThreeState: return "three-state";
    case ProcessKind::ThreeColor: return "three-color";
  }
  return "?";
}

std::string to_string(Color c) {
  switch (c) {
    case Color::White: return "white";
    case Color::Black: return "black";
    case Color::Black1: return "black1";
    case Color::Black0: return "black0";
    case Color::Gray: return "gray";
  }
  return "?";
}

std::string to_string(InitPolicy policy) {
  switch (policy) {
    case InitPolicy::AllWhite: return "all-white";
    case InitPolicy::AllBlack: return "all-black";
    case InitPolicy::UniformRandom: return "uniform-random";
    case InitPolicy::Alternating: return "alternating";
    case InitPolicy::AllGray: return "all-gray";
  }
  return "?";
}

ProcessKind parse_process(const std::string& name) {
  if (name == "two-state") return ProcessKind::TwoState;
  if (name == "three-state") return ProcessKind::ThreeState;
  if (name == "three-color") return ProcessKind::ThreeColor;
  throw std::invalid_argument("unknown process: " + name);
}

InitPolicy parse_init(const std::string& name) {
  if (name == "all-white") return InitPolicy::AllWhite;
  if (name == "all-black") return InitPolicy::AllBlack;
  if (name == "uniform-random") return InitPolicy::UniformRandom;
  if (name == "alternating") return InitPolicy::Alternating;
  if (name == "all-gray") return InitPolicy::AllGray;
  throw std::invalid_argument("unknown init policy: " + name);
}

StateVector init_states(ProcessKind process, std::size_t n, InitPolicy policy,
                        std::uint64_t seed) {
  if (policy == InitPolicy::AllGray && process != ProcessKind::ThreeColor) {
    throw std::invalid_argument("all-gray init requires the three-color process");
  }
  const auto letters = alphabet(process);
  StateVector s{process, std::vector<Color>(n, Color::White), 0};
  const CoinStream coins(seed);
  for (std::size_t u = 0; u < n; ++u) {
    switch (policy) {
      case InitPolicy::AllWhite: s.colors[u] = Color::White; break;
      case InitPolicy::AllBlack: s.colors[u] = letters.front(); break;
      case InitPolicy::AllGray: s.colors[u] = Color::Gray; break;
      case InitPolicy::Alternating: s.colors[u] = letters[u % letters.size()]; break;
      case InitPolicy::UniformRandom:
        s.colors[u] = letters[coins.uniform_below(Stream::Init, 0, u, letters.size())];
        break;
    }
  }
  return s;
}

namespace {

void check_consistent(const Graph& g, const StateVector& s) {
  if (s.colors.size() != g.num_vertices()) {
    throw std::invalid_argument("state size does not match graph");
  }
}

bool any_black_neighbor(const Graph& g, const StateVector& s, Vertex u) {
  for (Vertex v : g.neighbors(u)) {
    if (is_black(s.colors[v])) return true;
  }
  return false;
}

bool any_neighbor_colored(const Graph& g, const StateVector& s, Vertex u, Color c) {
  for (Vertex v : g.neighbors(u)) {
    if (s.colors[v] == c) return true;
  }
  return false;
}

bool is_active_scan(const Graph& g, const StateVector& s, Vertex u) {
  const Color c = s.colors[u];
  const bool bn = any_black_neighbor(g, s, u);
  switch (s.process) {
    case ProcessKind::TwoState:
    case ProcessKind::ThreeColor:
      return (c == Color::Black && bn) || (c == Color::White && !bn);
    case ProcessKind::ThreeState:
      if (c == Color::White) return !bn;
      if (c == Color::Black1) return bn;
      if (c == Color::Black0) return bn && !any_neighbor_colored(g, s, u, Color::Black1);
      return false;
  }
  return false;
}

}  // namespace

VertexSet active_set(const Graph& g, const StateVector& s) {
  check_consistent(g, s);
  VertexSet out(g.num_vertices());
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (is_active_scan(g, s, u)) out.insert(u);
  }
  return out;
}

VertexSet k_active_set(const Graph& g, const StateVector& s, std::size_t k) {
  const VertexSet active = active_set(g, s);
  VertexSet out(g.num_vertices());
  for (Vertex u : active.members()) {
    std::size_t count = 0;
    for (Vertex v : g.neighbors(u)) count += active.contains(v) ? 1 : 0;
    if (count <= k) out.insert(u);
  }
  return out;
}

StableSets stable_sets(const Graph& g, const StateVector& s) {
  check_consistent(g, s);
  const std::size_t n = g.num_vertices();
  StableSets out{VertexSet(n), VertexSet(n), VertexSet(n)};
  for (Vertex u = 0; u < n; ++u) {
    if (is_black(s.colors[u]) && !any_black_neighbor(g, s, u)) {
      out.stable_black.insert(u);
    }
  }
  for (Vertex u : out.stable_black.members()) {
    out.stable_all.insert(u);
    for (Vertex v : g.neighbors(u)) out.stable_all.insert(v);
  }
  for (Vertex u = 0; u < n; ++u) {
    if (!out.stable_all.contains(u)) out.nonstable.insert(u);
  }
  return out;
}

bool is_stabilized(const Graph& g, const StateVector& s) {
  check_consistent(g, s);
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const bool bn = any_black_neighbor(g, s, u);
    if (is_black(s.colors[u]) == bn) return false;
  }
  return true;
}

void step_block(const Graph& g, const StateVector& s, const CoinStream& coins,
                const OnOffVector* switch_on, Vertex begin, Vertex end,
                StateVector& next) {
  const std::uint64_t t = s.round + 1;
  for (Vertex u = begin; u < end; ++u) {
    const Color c = s.colors[u];
    Color out = c;
    switch (s.process) {
      case ProcessKind::TwoState: {
        const bool bn = any_black_neighbor(g, s, u);
        if ((c == Color::Black && bn) || (c == Color::White && !bn)) {
          out = coins.fair_bit(Stream::Color, t, u) ? Color::Black : Color::White;
        }
        break;
      }
      case ProcessKind::ThreeState: {
        const bool b1n = any_neighbor_colored(g, s, u, Color::Black1);
        const bool bn = b1n || any_neighbor_colored(g, s, u, Color::Black0);
        if (c == Color::Black1 || (c == Color::Black0 && !b1n) ||
            (c == Color::White && !bn)) {
          out = coins.fair_bit(Stream::Color, t, u) ? Color::Black1 : Color::Black0;
        } else if (c == Color::Black0) {
          out = Color::White;
        }
        break;
      }
      case ProcessKind::ThreeColor: {
        const bool bn = any_black_neighbor(g, s, u);
        if (c == Color::Black && bn) {
          out = coins.fair_bit(Stream::Color, t, u) ? Color::Black : Color::Gray;
        } else if (c == Color::White && !bn) {
          out = coins.fair_bit(Stream::Color, t, u) ? Color::Black : Color::White;
        } else if (c == Color::Gray && (*switch_on)[u] == OnOff::On) {
          out = Color::White;
        }
        break;
      }
    }
    next.colors[u] = out;
  }
}

StateVector step(const Graph& g, const StateVector& s, const CoinStream& coins,
                 const OnOffVector* switch_on) {
  check_consistent(g, s);
  const bool needs_switch = s.process == ProcessKind::ThreeColor;
  if (needs_switch && switch_on == nullptr) {
    throw std::invalid_argument("three-color step requires switch values");
  }
  if (!needs_switch && switch_on != nullptr) {
    throw std::invalid_argument("switch values given for a process without a switch");
  }
  if (switch_on != nullptr && switch_on->size() != g.num_vertices()) {
    throw std::invalid_argument("switch vector size does not match graph");
  }
  StateVector next{s.process, std::vector<Color>(s.size()), s.round + 1};
  step_block(g, s, coins, switch_on, 0, static_cast<Vertex>(g.num_vertices()), next);
  return next;
}

// Simulation -------------------------------------------------------------------

Simulation::Simulation(const Graph& g, StateVector initial, std::uint64_t seed,
                       std::optional<LevelVector> levels, bool audit)
    : g_(&g), coins_(seed), state_(std::move(initial)), levels_(std::move(levels)),
      audit_(audit) {
  check_consistent(g, state_);
  const std::size_t n = g.num_vertices();
  const bool three_color = state_.process == ProcessKind::ThreeColor;
  if (three_color != levels_.has_value()) {
    throw std::invalid_argument("switch levels must be given exactly for three-color");
  }
  black_nbrs_.assign(n, 0);
  black1_nbrs_.assign(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    const Color c = state_.colors[u];
    if (!is_black(c)) continue;
    for (Vertex v : g.neighbors(u)) {
      ++black_nbrs_[v];
      if (c == Color::Black1) ++black1_nbrs_[v];
    }
  }
  if (levels_) {
    if (levels_->levels.size() != n) {
      throw std::invalid_argument("level vector size does not match graph");
    }
    levels_->round = state_.round;
    zeta_threshold_ = probability_threshold(levels_->zeta);
    level_hist_.assign(n * 6, 0);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : g.neighbors(u)) ++level_hist_[v * 6 + levels_->levels[u]];
    }
  }
}

Color Simulation::next_color(Vertex u) const {
  const Color c = state_.colors[u];
  const std::uint64_t t = state_.round + 1;
  const bool bn = black_nbrs_[u] != 0;
  switch (state_.process) {
    case ProcessKind::TwoState:
      if (bn == (c == Color::Black)) {
        return coins_.fair_bit(Stream::Color, t, u) ? Color::Black : Color::White;
      }
      return c;
    case ProcessKind::ThreeState:
      if (c == Color::Black1 || (c == Color::Black0 && black1_nbrs_[u] == 0) ||
          (c == Color::White && !bn)) {
        return coins_.fair_bit(Stream::Color, t, u) ? Color::Black1 : Color::Black0;
      }
      return c == Color::Black0 ? Color::White : c;
    case ProcessKind::ThreeColor:
      if (c == Color::Black && bn) {
        return coins_.fair_bit(Stream::Color, t, u) ? Color::Black : Color::Gray;
      }
      if (c == Color::White && !bn) {
        return coins_.fair_bit(Stream::Color, t, u) ? Color::Black : Color::White;
      }
      if (c == Color::Gray && sigma_of(levels_->levels[u]) == OnOff::On) {
        return Color::White;
      }
      return c;
  }
  return c;
}

void Simulation::apply_color(Vertex u, Color c) {
  const Color old = state_.colors[u];
  state_.colors[u] = c;
  const int d_black = static_cast<int>(is_black(c)) - static_cast<int>(is_black(old));
  const int d_black1 =
      static_cast<int>(c == Color::Black1) - static_cast<int>(old == Color::Black1);
  if (d_black == 0 && d_black1 == 0) return;
  for (Vertex v : g_->neighbors(u)) {
    black_nbrs_[v] = static_cast<std::uint32_t>(static_cast<int>(black_nbrs_[v]) + d_black);
    black1_nbrs_[v] = static_cast<std::uint32_t>(static_cast<int>(black1_nbrs_[v]) + d_black1);
  }
}

void Simulation::advance_switch() {
  auto& lv = *levels_;
  const std::uint64_t t = lv.round + 1;
  const std::size_t n = lv.levels.size();
  level_changes_.clear();
  for (Vertex u = 0; u < n; ++u) {
    const std::uint8_t cur = lv.levels[u];
    std::uint8_t next;
    if (cur == 0 ||
        (cur == kMaxLevel && !coins_.below(Stream::Switch, t, u, zeta_threshold_))) {
      next = kMaxLevel;
    } else {
      std::uint8_t top = cur;
      const std::uint32_t* hist = &level_hist_[static_cast<std::size_t>(u) * 6];
      for (std::uint8_t l = kMaxLevel; l > top; --l) {
        if (hist[l] != 0) {
          top = l;
          break;
        }
      }
      next = static_cast<std::uint8_t>(top - 1);
    }
    if (next != cur) level_changes_.emplace_back(u, next);
  }
  for (const auto& [u, next] : level_changes_) {
    const std::uint8_t old = lv.levels[u];
    lv.levels[u] = next;
    for (Vertex v : g_->neighbors(u)) {
      --level_hist_[static_cast<std::size_t>(v) * 6 + old];
      ++level_hist_[static_cast<std::size_t>(v) * 6 + next];
    }
  }
  lv.round = t;
}

void Simulation::advance() {
  const std::size_t n = state_.colors.size();
  std::optional<StateVector> reference;
  std::optional<LevelVector> reference_levels;
  if (audit_) {
    std::optional<OnOffVector> on;
    if (levels_) on = sigma(*levels_);
    reference = step(*g_, state_, coins_, on ? &*on : nullptr);
    if (levels_) reference_levels = switch_step(*g_, *levels_, coins_);
  }

  color_changes_.clear();
  for (Vertex u = 0; u < n; ++u) {
    const Color c = next_color(u);
    if (c != state_.colors[u]) color_changes_.emplace_back(u, c);
  }
  // The switch update reads round t-1 levels, which the MIS rule above has
  // already consumed, so it can run after the color decisions.
  if (levels_) advance_switch();
  for (const auto& [u, c] : color_changes_) apply_color(u, c);
  ++state_.round;

  if (audit_) {
    if (state_ != *reference) {
      throw std::logic_error("incremental update diverged from reference step");
    }
    if (levels_ && *levels_ != *reference_levels) {
      throw std::logic_error("incremental switch diverged from reference step");
    }
  }
}

bool Simulation::stabilized() const {
  const std::size_t n = state_.colors.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (is_black(state_.colors[u]) == (black_nbrs_[u] != 0)) return false;
  }
  return true;
}

RoundMetrics Simulation::metrics() const {
  const std::size_t n = state_.colors.size();
  RoundMetrics m;
  m.round = state_.round;
  std::vector<char> covered(n, 0);
  std::size_t covered_count = 0;
  for (Vertex u = 0; u < n; ++u) {
    const Color c = state_.colors[u];
    const bool bn = black_nbrs_[u] != 0;
    if (is_black(c)) {
      ++m.blacks;
      if (!bn) {
        ++m.stable_black;
        if (!covered[u]) {
          covered[u] = 1;
          ++covered_count;
        }
        for (Vertex v : g_->neighbors(u)) {
          if (!covered[v]) {
            covered[v] = 1;
            ++covered_count;
          }
        }
      }
    } else if (c == Color::White) {
      ++m.whites;
    } else {
      ++m.grays;
    }
    bool active = false;
    switch (state_.process) {
      case ProcessKind::TwoState:
      case ProcessKind::ThreeColor:
        active = (c == Color::Black && bn) || (c == Color::White && !bn);
        break;
      case ProcessKind::ThreeState:
        active = (c == Color::White && !bn) || (c == Color::Black1 && bn) ||
                 (c == Color::Black0 && bn && black1_nbrs_[u] == 0);
        break;
    }
    if (active) ++m.actives;
  }
  m.nonstable = n - covered_count;
  return m;
}

TrialResult run_trial(ProcessKind process, const Graph& g, InitPolicy policy,
                      std::uint64_t seed, const TrialOptions& opts,
                      const std::string& graph_descriptor) {
  if (opts.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  std::optional<LevelVector> levels;
  if (process == ProcessKind::ThreeColor) {
    opts.switch_params.validate();
    levels = switch_init(g.num_vertices(), opts.switch_init, seed, opts.switch_params.zeta);
  }
  Simulation sim(g, init_states(process, g.num_vertices(), policy, seed), seed,
                 std::move(levels), opts.audit);

  TrialResult result;
  result.process = process;
  result.graph = graph_descriptor;
  result.init = policy;
  result.seed = seed;

  const auto record = [&](bool force) {
    if (opts.metric_stride == 0) return;
    const std::uint64_t t = sim.round();
    if (force || t % opts.metric_stride == 0) {
      if (result.metrics.empty() || result.metrics.back().round != t) {
        result.metrics.push_back(sim.metrics());
      }
    }
  };

  record(true);
  if (sim.stabilized()) {
    result.stabilization_round = 0;
  } else {
    while (sim.round() < opts.max_rounds) {
      sim.advance();
      record(false);
      if (sim.stabilized()) {
        result.stabilization_round = sim.round();
        break;
      }
    }
  }
  record(true);
  result.rounds_executed = sim.round();
  result.final_state = sim.state();
  return result;
}

}  // namespace misproc
