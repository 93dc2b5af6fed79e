#include "misproc/log_switch.hpp"

#include <cmath>
#include <stdexcept>

namespace misproc {

bool SwitchParams::consistent() const { return std::abs(a * zeta - 4.0) < 1e-9; }

void SwitchParams::validate() const {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::invalid_argument("zeta must lie in (0, 1)");
  if (!(a > 0.0)) throw std::invalid_argument("switch parameter a must be positive");
}

std::string to_string(SwitchInit policy) {
  return policy == SwitchInit::AllFive ? "all-five" : "uniform-random";
}

SwitchInit parse_switch_init(const std::string& name) {
  if (name == "all-five") return SwitchInit::AllFive;
  if (name == "uniform-random") return SwitchInit::UniformRandom;
  throw std::invalid_argument("unknown switch init policy: " + name);
}

LevelVector switch_init(std::size_t n, SwitchInit policy, std::uint64_t seed,
                        double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::invalid_argument("zeta must lie in (0, 1)");
  LevelVector lv{std::vector<std::uint8_t>(n, kMaxLevel), 0, zeta};
  if (policy == SwitchInit::UniformRandom) {
    const CoinStream coins(seed);
    for (std::size_t u = 0; u < n; ++u) {
      lv.levels[u] = static_cast<std::uint8_t>(
          coins.uniform_below(Stream::SwitchInit, 0, u, kMaxLevel + 1));
    }
  }
  return lv;
}

LevelVector switch_step(const Graph& g, const LevelVector& lv,
                        const CoinStream& coins) {
  if (lv.levels.size() != g.num_vertices()) {
    throw std::invalid_argument("level vector size does not match graph");
  }
  const std::uint64_t t = lv.round + 1;
  const std::uint64_t threshold = probability_threshold(lv.zeta);
  LevelVector next{std::vector<std::uint8_t>(lv.levels.size()), t, lv.zeta};
  for (Vertex u = 0; u < lv.levels.size(); ++u) {
    const std::uint8_t cur = lv.levels[u];
    // b_t(u) = 0 with probability zeta; drawn only at level 5.
    const bool bit_one = cur == kMaxLevel && !coins.below(Stream::Switch, t, u, threshold);
    if (bit_one || cur == 0) {
      next.levels[u] = kMaxLevel;
      continue;
    }
    std::uint8_t top = cur;
    for (Vertex v : g.neighbors(u)) {
      top = std::max(top, lv.levels[v]);
      if (top == kMaxLevel) break;
    }
    next.levels[u] = static_cast<std::uint8_t>(top - 1);
  }
  return next;
}

OnOffVector sigma(const LevelVector& lv) {
  OnOffVector out(lv.levels.size());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = sigma_of(lv.levels[u]);
  return out;
}

std::size_t SwitchAudit::count(SwitchProperty p, bool include_past_horizon) const {
  std::size_t c = 0;
  for (const auto& v : violations) {
    if (v.property == p && (include_past_horizon || !v.past_horizon)) ++c;
  }
  return c;
}

bool SwitchAudit::passed() const {
  for (const auto& v : violations) {
    if (!v.past_horizon) return false;
  }
  return true;
}

SwitchAudit run_length_audit(std::span<const OnOffVector> history,
                             const AuditOptions& opts) {
  SwitchAudit audit;
  audit.rounds = history.size();
  const std::size_t width = history.empty() ? 0 : history.front().size();
  for (const auto& row : history) {
    if (row.size() != width) throw std::invalid_argument("ragged switch history");
  }
  audit.n = opts.n == 0 ? width : opts.n;
  const double ln_n = audit.n > 0 ? std::log(static_cast<double>(audit.n)) : 0.0;
  audit.s1_max_off = opts.a * ln_n;
  audit.s2_min_off = opts.a / 6.0 * ln_n;
  audit.burn_in.assign(width, std::nullopt);
  if (opts.keep_runs) audit.runs.assign(width, {});
  const std::uint64_t horizon = audit.n;
  const std::uint64_t total = history.size();

  for (Vertex u = 0; u < width; ++u) {
    // S2 burn-in: first round i >= (a/6) ln n with sigma_i(u) = on.
    for (std::uint64_t t = 0; t < total; ++t) {
      if (static_cast<double>(t) >= audit.s2_min_off && history[t][u] == OnOff::On) {
        audit.burn_in[u] = t;
        break;
      }
    }

    std::uint64_t start = 0;
    while (start < total) {
      const OnOff value = history[start][u];
      std::uint64_t end = start;
      while (end < total && history[end][u] == value) ++end;
      const std::uint64_t length = end - start;
      const bool truncated = end == total;
      if (opts.keep_runs) audit.runs[u].push_back({value, start, length, truncated});

      if (value == OnOff::Off) {
        if (static_cast<double>(length) > audit.s1_max_off) {
          audit.violations.push_back(
              {SwitchProperty::S1, u, start, length, truncated, start > horizon});
        }
        if (opts.diam_le_2 && audit.burn_in[u] && start > *audit.burn_in[u] &&
            !truncated && static_cast<double>(length) < audit.s2_min_off) {
          audit.violations.push_back(
              {SwitchProperty::S2, u, start, length, truncated, start > horizon});
        }
      } else if (opts.diam_le_2 && end > opts.s3_start) {
        const std::uint64_t from = std::max(start, opts.s3_start);
        const std::uint64_t clipped = end - from;
        if (clipped > opts.b) {
          audit.violations.push_back(
              {SwitchProperty::S3, u, from, clipped, truncated, false});
        }
      }
      start = end;
    }
  }
  return audit;
}

std::vector<OnOffVector> switch_history(const Graph& g, LevelVector init,
                                        const CoinStream& coins,
                                        std::uint64_t rounds) {
  std::vector<OnOffVector> history;
  history.reserve(rounds + 1);
  history.push_back(sigma(init));
  for (std::uint64_t t = 0; t < rounds; ++t) {
    init = switch_step(g, init, coins);
    history.push_back(sigma(init));
  }
  return history;
}

}  // namespace misproc
