#include "misproc/goodness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "misproc/coins.hpp"

namespace misproc {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::SampledPass: return "sampled-pass";
  }
  return "?";
}

bool GoodnessReport::good() const {
  return std::none_of(properties.begin(), properties.end(),
                      [](const auto& r) { return r.status == CheckStatus::Fail; });
}

bool GoodnessReport::inconclusive() const {
  return std::any_of(properties.begin(), properties.end(),
                     [](const auto& r) { return r.status == CheckStatus::SampledPass; });
}

namespace {

double ln_n(std::size_t n) { return n > 1 ? std::log(static_cast<double>(n)) : 0.0; }

double p1_threshold(std::size_t n, double p, std::size_t s) {
  return std::max(8.0 * p * static_cast<double>(s), 4.0 * ln_n(n));
}

/// Smallest |S| quantified by (P2); n + 1 when none qualifies.
std::size_t p2_min_size(std::size_t n, double p) {
  if (!(p > 0.0)) return n + 1;
  const double bound = 40.0 * ln_n(n) / p;
  if (bound > static_cast<double>(n)) return n + 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bound - kThresholdSlack)));
}

/// Largest |T| quantified by (P4).
std::size_t p4_max_t(std::size_t n, double p) {
  if (!(p > 0.0)) return n;
  const double bound = ln_n(n) / p + kThresholdSlack;
  return bound >= static_cast<double>(n) ? n : static_cast<std::size_t>(std::floor(bound));
}

double p3_slack(std::size_t n, double p) {
  if (!(p > 0.0)) return INFINITY;
  const double l = ln_n(n);
  return 8.0 * l * l / p;
}

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.num_vertices(), 0);
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    for (Vertex v : g.neighbors(u)) adj[u] |= std::uint32_t{1} << v;
  }
  return adj;
}

std::vector<Vertex> mask_members(std::uint32_t mask) {
  std::vector<Vertex> out;
  while (mask != 0) {
    out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::uint32_t union_adj(const std::vector<std::uint32_t>& adj, std::uint32_t set) {
  std::uint32_t out = 0;
  while (set != 0) {
    out |= adj[static_cast<std::size_t>(std::countr_zero(set))];
    set &= set - 1;
  }
  return out;
}

void require_exact_cap(const Graph& g, std::size_t cap, const char* what) {
  if (g.num_vertices() > cap) {
    throw ExactModeCapError(std::string("exact mode cap exceeded for ") + what + ": n = " +
                            std::to_string(g.num_vertices()) + " > " + std::to_string(cap));
  }
}

/// Size classes for sampled mode: every size when the range is short,
/// otherwise 64 evenly spaced sizes including both ends.
std::vector<std::size_t> size_classes(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  if (lo > hi) return out;
  const std::size_t span = hi - lo + 1;
  constexpr std::size_t kClasses = 64;
  if (span <= kClasses) {
    for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  for (std::size_t j = 0; j < kClasses; ++j) {
    out.push_back(lo + (span - 1) * j / (kClasses - 1));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Uniform k-subset of `pool` by partial Fisher-Yates.
std::vector<Vertex> sample_subset(std::vector<Vertex> pool, std::size_t k,
                                  KeyedSequence& seq) {
  k = std::min(k, pool.size());
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t pick = j + seq.next_below(pool.size() - j);
    std::swap(pool[j], pool[pick]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

std::vector<char> membership(std::size_t n, const std::vector<Vertex>& set) {
  std::vector<char> in(n, 0);
  for (Vertex v : set) in[v] = 1;
  return in;
}

/// N^+(X) as a membership vector.
std::vector<char> closed_nbhd(const Graph& g, const std::vector<Vertex>& set) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex u : set) {
    in[u] = 1;
    for (Vertex v : g.neighbors(u)) in[v] = 1;
  }
  return in;
}

struct P3Sides {
  std::size_t lhs;
  std::size_t rhs_base;
};

P3Sides p3_sides(const Graph& g, const std::vector<Vertex>& s,
                 const std::vector<Vertex>& t, const std::vector<Vertex>& i) {
  const std::size_t n = g.num_vertices();
  const auto in_s = membership(n, s);
  const auto in_t = membership(n, t);
  std::vector<Vertex> s_or_i = s;
  s_or_i.insert(s_or_i.end(), i.begin(), i.end());
  const auto cl_si = closed_nbhd(g, s_or_i);
  const auto cl_i = closed_nbhd(g, i);
  std::vector<char> nt(n, 0), ns(n, 0);
  for (Vertex u : t) {
    for (Vertex v : g.neighbors(u)) {
      if (!in_t[v]) nt[v] = 1;
    }
  }
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) {
      if (!in_s[v]) ns[v] = 1;
    }
  }
  P3Sides sides{0, 0};
  for (std::size_t v = 0; v < n; ++v) {
    if (nt[v] && !cl_si[v]) ++sides.lhs;
    if (ns[v] && !cl_i[v]) ++sides.rhs_base;
  }
  return sides;
}

/// For fixed T, the S maximizing |E(S,T)| - 6|S| ln n among |S| >= |T|
/// is a prefix of the outside vertices sorted by neighbors in T.
std::optional<Witness> best_p4_for_t(const Graph& g, double p,
                                     const std::vector<Vertex>& t) {
  (void)p;
  const std::size_t n = g.num_vertices();
  const auto in_t = membership(n, t);
  std::vector<std::pair<std::size_t, Vertex>> outside;
  std::vector<std::size_t> hits(n, 0);
  for (Vertex u : t) {
    for (Vertex v : g.neighbors(u)) ++hits[v];
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!in_t[v]) outside.emplace_back(hits[v], v);
  }
  std::sort(outside.begin(), outside.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  const double per_vertex = 6.0 * ln_n(n);
  std::size_t edges = 0;
  for (std::size_t k = 1; k <= outside.size(); ++k) {
    edges += outside[k - 1].first;
    if (k < t.size()) continue;
    const double rhs = per_vertex * static_cast<double>(k);
    if (static_cast<double>(edges) > rhs + kThresholdSlack) {
      Witness w;
      for (std::size_t j = 0; j < k; ++j) w.s.push_back(outside[j].second);
      std::sort(w.s.begin(), w.s.end());
      w.t = t;
      w.lhs = static_cast<double>(edges);
      w.rhs = rhs;
      return w;
    }
  }
  return std::nullopt;
}

PropertyResult make_result(const char* name) {
  PropertyResult r;
  r.name = name;
  return r;
}

void finish_sampled(PropertyResult& r) {
  if (r.status != CheckStatus::Fail) r.status = CheckStatus::SampledPass;
}

}  // namespace

// Predicates --------------------------------------------------------------------

bool p1_violated(const Graph& g, double p, const std::vector<Vertex>& s) {
  if (s.empty()) return false;
  const auto in_s = membership(g.num_vertices(), s);
  std::size_t twice = 0;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) twice += in_s[v] ? 1 : 0;
  }
  const double avg = static_cast<double>(twice) / static_cast<double>(s.size());
  return avg > p1_threshold(g.num_vertices(), p, s.size()) + kThresholdSlack;
}

bool p2_violated(const Graph& g, double p, const std::vector<Vertex>& s) {
  const std::size_t n = g.num_vertices();
  if (s.size() < p2_min_size(n, p)) return false;
  const auto in_s = membership(n, s);
  const double need = p * static_cast<double>(s.size()) / 2.0 - kThresholdSlack;
  std::size_t poor = 0;
  for (Vertex u = 0; u < n; ++u) {
    if (in_s[u]) continue;
    std::size_t hits = 0;
    for (Vertex v : g.neighbors(u)) hits += in_s[v] ? 1 : 0;
    if (static_cast<double>(hits) < need) ++poor;
  }
  return 2 * poor > s.size();
}

bool p3_violated(const Graph& g, double slack, const std::vector<Vertex>& s,
                 const std::vector<Vertex>& t, const std::vector<Vertex>& i) {
  const std::size_t n = g.num_vertices();
  if (s.size() < 2 * t.size()) return false;
  const auto in_s = membership(n, s);
  const auto in_t = membership(n, t);
  const auto in_i = membership(n, i);
  for (std::size_t v = 0; v < n; ++v) {
    if (in_s[v] + in_t[v] + in_i[v] > 1) return false;
  }
  for (Vertex u : i) {
    for (Vertex v : g.neighbors(u)) {
      if (in_s[v] || in_t[v]) return false;
    }
  }
  const auto sides = p3_sides(g, s, t, i);
  return static_cast<double>(sides.lhs) >
         static_cast<double>(sides.rhs_base) + slack + kThresholdSlack;
}

bool p4_violated(const Graph& g, double p, const std::vector<Vertex>& s,
                 const std::vector<Vertex>& t) {
  const std::size_t n = g.num_vertices();
  if (s.size() < t.size() || t.size() > p4_max_t(n, p)) return false;
  const auto in_s = membership(n, s);
  const auto in_t = membership(n, t);
  std::size_t edges = 0;
  for (Vertex u : t) {
    if (in_s[u]) return false;
    for (Vertex v : g.neighbors(u)) edges += in_s[v] ? 1 : 0;
  }
  return static_cast<double>(edges) >
         6.0 * static_cast<double>(s.size()) * ln_n(n) + kThresholdSlack;
}

bool witness_violates(const Graph& g, double p, std::size_t property_index,
                      const Witness& w) {
  switch (property_index) {
    case 0: return p1_violated(g, p, w.s);
    case 1: return p2_violated(g, p, w.s);
    case 2: return p3_violated(g, p3_slack(g.num_vertices(), p), w.s, w.t, w.i);
    case 3: return p4_violated(g, p, w.s, w.t);
    case 4:
      return w.pair && static_cast<double>(common_neighbors(g, w.pair->first, w.pair->second)) >
                           std::max(6.0 * static_cast<double>(g.num_vertices()) * p * p,
                                    4.0 * ln_n(g.num_vertices())) +
                               kThresholdSlack;
    case 5: {
      const auto d = diameter(g);
      return !d || *d > 2;
    }
    default: return false;
  }
}

// (P1) ----------------------------------------------------------------------------

PropertyResult check_p1(const Graph& g, double p, const CheckMode& mode) {
  auto r = make_result("P1");
  const std::size_t n = g.num_vertices();
  if (mode.exact) {
    require_exact_cap(g, kExactCapSubsets, "P1");
    const auto adj = adjacency_masks(g);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      ++r.evaluated;
      std::size_t twice = 0;
      for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        twice += static_cast<std::size_t>(
            std::popcount(adj[static_cast<std::size_t>(std::countr_zero(m))] & mask));
      }
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      const double thr = p1_threshold(n, p, size);
      if (static_cast<double>(twice) > (thr + kThresholdSlack) * static_cast<double>(size)) {
        Witness w;
        w.s = mask_members(mask);
        w.lhs = static_cast<double>(twice) / static_cast<double>(size);
        w.rhs = thr;
        r.status = CheckStatus::Fail;
        r.witness = std::move(w);
        return r;
      }
    }
    return r;
  }

  const CoinStream coins(mode.seed);
  KeyedSequence seq(coins, Stream::Sampling, 1);
  const auto everyone = all_vertices(n);
  auto test = [&](const std::vector<Vertex>& s) {
    ++r.evaluated;
    if (!p1_violated(g, p, s)) return false;
    const auto in_s = membership(n, s);
    std::size_t twice = 0;
    for (Vertex u : s) {
      for (Vertex v : g.neighbors(u)) twice += in_s[v] ? 1 : 0;
    }
    Witness w;
    w.s = s;
    w.lhs = static_cast<double>(twice) / static_cast<double>(s.size());
    w.rhs = p1_threshold(n, p, s.size());
    r.status = CheckStatus::Fail;
    r.witness = std::move(w);
    return true;
  };

  // Min-degree peeling visits the densest-core candidates.
  {
    std::vector<std::size_t> deg(n);
    std::vector<char> alive(n, 1);
    for (Vertex u = 0; u < n; ++u) deg[u] = g.degree(u);
    std::vector<Vertex> order;
    for (std::size_t step = 0; step < n; ++step) {
      std::vector<Vertex> current;
      for (Vertex u = 0; u < n; ++u) {
        if (alive[u]) current.push_back(u);
      }
      if (test(current)) return r;
      Vertex pick = current.front();
      for (Vertex u : current) {
        if (deg[u] < deg[pick]) pick = u;
      }
      alive[pick] = 0;
      for (Vertex v : g.neighbors(pick)) {
        if (alive[v]) --deg[v];
      }
    }
  }
  for (std::size_t k : size_classes(1, n)) {
    for (std::size_t j = 0; j < mode.samples; ++j) {
      if (test(sample_subset(everyone, k, seq))) return r;
    }
  }
  finish_sampled(r);
  return r;
}

// (P2) ----------------------------------------------------------------------------

PropertyResult check_p2(const Graph& g, double p, const CheckMode& mode) {
  auto r = make_result("P2");
  const std::size_t n = g.num_vertices();
  const std::size_t min_size = p2_min_size(n, p);
  if (mode.exact) require_exact_cap(g, kExactCapSubsets, "P2");
  if (min_size > n) {
    r.note = "vacuous: no set reaches 40 ln(n)/p";
    return r;
  }
  auto fail_with = [&](std::vector<Vertex> s) {
    const auto in_s = membership(n, s);
    const double need = p * static_cast<double>(s.size()) / 2.0 - kThresholdSlack;
    std::size_t poor = 0;
    for (Vertex u = 0; u < n; ++u) {
      if (in_s[u]) continue;
      std::size_t hits = 0;
      for (Vertex v : g.neighbors(u)) hits += in_s[v] ? 1 : 0;
      if (static_cast<double>(hits) < need) ++poor;
    }
    Witness w;
    w.lhs = static_cast<double>(poor);
    w.rhs = static_cast<double>(s.size()) / 2.0;
    w.s = std::move(s);
    r.status = CheckStatus::Fail;
    r.witness = std::move(w);
  };

  if (mode.exact) {
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) < min_size) continue;
      ++r.evaluated;
      auto s = mask_members(mask);
      if (p2_violated(g, p, s)) {
        fail_with(std::move(s));
        return r;
      }
    }
    return r;
  }

  const CoinStream coins(mode.seed);
  KeyedSequence seq(coins, Stream::Sampling, 2);
  const auto everyone = all_vertices(n);
  // Highest-degree prefixes leave the sparsest vertices outside.
  std::vector<Vertex> by_degree = everyone;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  for (std::size_t k : size_classes(min_size, n)) {
    std::vector<Vertex> prefix(by_degree.begin(), by_degree.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(prefix.begin(), prefix.end());
    ++r.evaluated;
    if (p2_violated(g, p, prefix)) {
      fail_with(std::move(prefix));
      return r;
    }
    for (std::size_t j = 0; j < mode.samples; ++j) {
      auto s = sample_subset(everyone, k, seq);
      ++r.evaluated;
      if (p2_violated(g, p, s)) {
        fail_with(std::move(s));
        return r;
      }
    }
  }
  finish_sampled(r);
  return r;
}

// (P3) ----------------------------------------------------------------------------

std::optional<Witness> find_p3_violation_exact(const Graph& g, double slack,
                                               std::uint64_t* evaluated) {
  require_exact_cap(g, kExactCapTriples, "P3");
  const std::size_t n = g.num_vertices();
  const auto adj = adjacency_masks(g);
  const std::uint32_t all = n == 32 ? ~0u : (std::uint32_t{1} << n) - 1;
  std::uint64_t count = 0;
  for (std::uint32_t imask = 0;; imask = (imask - all) & all) {
    const std::uint32_t cl_i = imask | union_adj(adj, imask);
    const std::uint32_t allowed = all & ~cl_i;
    // S ranges over subsets of `allowed`, T over subsets of allowed \ S.
    for (std::uint32_t smask = 0;; smask = (smask - allowed) & allowed) {
      const auto s_size = static_cast<std::size_t>(std::popcount(smask));
      const std::uint32_t adj_s = union_adj(adj, smask);
      const std::uint32_t n_s = adj_s & ~smask;
      const auto rhs_base = static_cast<std::size_t>(std::popcount(n_s & ~cl_i));
      const std::uint32_t cl_si = smask | adj_s | cl_i;
      const std::uint32_t t_pool = allowed & ~smask;
      for (std::uint32_t tmask = 0;; tmask = (tmask - t_pool) & t_pool) {
        if (2 * static_cast<std::size_t>(std::popcount(tmask)) <= s_size) {
          ++count;
          const std::uint32_t n_t = union_adj(adj, tmask) & ~tmask;
          const auto lhs = static_cast<std::size_t>(std::popcount(n_t & ~cl_si));
          if (static_cast<double>(lhs) >
              static_cast<double>(rhs_base) + slack + kThresholdSlack) {
            if (evaluated) *evaluated = count;
            Witness w;
            w.s = mask_members(smask);
            w.t = mask_members(tmask);
            w.i = mask_members(imask);
            w.lhs = static_cast<double>(lhs);
            w.rhs = static_cast<double>(rhs_base) + slack;
            return w;
          }
        }
        if (tmask == t_pool) break;
      }
      if (smask == allowed) break;
    }
    if (imask == all) break;
  }
  if (evaluated) *evaluated = count;
  return std::nullopt;
}

PropertyResult check_p3(const Graph& g, double p, const CheckMode& mode) {
  auto r = make_result("P3");
  const std::size_t n = g.num_vertices();
  const double slack = p3_slack(n, p);
  if (mode.exact) require_exact_cap(g, kExactCapTriples, "P3");
  // |N(T) \ ...| never exceeds n - 1.
  if (slack + 1.0 > static_cast<double>(n)) {
    r.note = "vacuous: 8 ln^2(n)/p exceeds any neighborhood size";
    return r;
  }
  if (mode.exact) {
    if (auto w = find_p3_violation_exact(g, slack, &r.evaluated)) {
      r.status = CheckStatus::Fail;
      r.witness = std::move(w);
    }
    return r;
  }

  const CoinStream coins(mode.seed);
  KeyedSequence seq(coins, Stream::Sampling, 3);
  const auto everyone = all_vertices(n);
  for (std::size_t k : size_classes(1, n)) {
    for (std::size_t j = 0; j < mode.samples; ++j) {
      const auto i = sample_subset(everyone, seq.next_below(k / 2 + 1), seq);
      const auto cl_i = closed_nbhd(g, i);
      std::vector<Vertex> pool;
      for (Vertex v = 0; v < n; ++v) {
        if (!cl_i[v]) pool.push_back(v);
      }
      if (pool.empty()) continue;
      const auto s = sample_subset(pool, std::min(k, pool.size()), seq);
      const auto in_s = membership(n, s);
      std::vector<Vertex> rest;
      for (Vertex v : pool) {
        if (!in_s[v]) rest.push_back(v);
      }
      const auto t = sample_subset(rest, seq.next_below(s.size() / 2 + 1), seq);
      ++r.evaluated;
      if (p3_violated(g, slack, s, t, i)) {
        const auto sides = p3_sides(g, s, t, i);
        Witness w{s, t, i, std::nullopt, static_cast<double>(sides.lhs),
                  static_cast<double>(sides.rhs_base) + slack};
        r.status = CheckStatus::Fail;
        r.witness = std::move(w);
        return r;
      }
    }
  }
  finish_sampled(r);
  return r;
}

// (P4) ----------------------------------------------------------------------------

PropertyResult check_p4(const Graph& g, double p, const CheckMode& mode) {
  auto r = make_result("P4");
  const std::size_t n = g.num_vertices();
  const std::size_t max_t = std::min(p4_max_t(n, p), n / 2);
  if (mode.exact) require_exact_cap(g, kExactCapSubsets, "P4");
  if (max_t == 0) {
    r.note = "vacuous: ln(n)/p < 1";
    return r;
  }
  auto try_t = [&](const std::vector<Vertex>& t) {
    ++r.evaluated;
    if (auto w = best_p4_for_t(g, p, t)) {
      r.status = CheckStatus::Fail;
      r.witness = std::move(w);
      return true;
    }
    return false;
  };

  if (mode.exact) {
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > max_t) continue;
      if (try_t(mask_members(mask))) return r;
    }
    return r;
  }

  const CoinStream coins(mode.seed);
  KeyedSequence seq(coins, Stream::Sampling, 4);
  const auto everyone = all_vertices(n);
  std::vector<Vertex> by_degree = everyone;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  for (std::size_t k : size_classes(1, max_t)) {
    std::vector<Vertex> top(by_degree.begin(), by_degree.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(top.begin(), top.end());
    if (try_t(top)) return r;
    for (std::size_t j = 0; j < mode.samples; ++j) {
      if (try_t(sample_subset(everyone, k, seq))) return r;
    }
  }
  finish_sampled(r);
  return r;
}

// (P5), (P6) ------------------------------------------------------------------------

PropertyResult check_p5(const Graph& g, double p) {
  auto r = make_result("P5");
  const std::size_t n = g.num_vertices();
  const double thr = std::max(6.0 * static_cast<double>(n) * p * p, 4.0 * ln_n(n));
  std::vector<std::uint32_t> common(n, 0);
  std::vector<Vertex> touched;
  std::size_t best = 0;
  std::optional<std::pair<Vertex, Vertex>> best_pair;
  for (Vertex u = 0; u < n; ++u) {
    touched.clear();
    for (Vertex w : g.neighbors(u)) {
      for (Vertex v : g.neighbors(w)) {
        if (v <= u) continue;
        if (common[v]++ == 0) touched.push_back(v);
      }
    }
    for (Vertex v : touched) {
      if (common[v] > best) {
        best = common[v];
        best_pair = std::make_pair(u, v);
      }
      common[v] = 0;
    }
    r.evaluated += n - u - 1;
  }
  if (static_cast<double>(best) > thr + kThresholdSlack) {
    Witness w;
    w.pair = best_pair;
    w.lhs = static_cast<double>(best);
    w.rhs = thr;
    r.status = CheckStatus::Fail;
    r.witness = std::move(w);
  }
  r.note = "max common neighbors " + std::to_string(best);
  return r;
}

PropertyResult check_p6(const Graph& g, double p) {
  auto r = make_result("P6");
  const std::size_t n = g.num_vertices();
  const double trigger = 2.0 * std::sqrt(ln_n(n) / static_cast<double>(n));
  if (p < trigger) {
    r.status = CheckStatus::Skipped;
    r.note = "p below 2 sqrt(ln(n)/n)";
    return r;
  }
  r.evaluated = n;
  const auto d = diameter(g);
  if (!d || *d > 2) {
    Witness w;
    w.lhs = d ? static_cast<double>(*d) : INFINITY;
    w.rhs = 2.0;
    r.status = CheckStatus::Fail;
    r.witness = std::move(w);
    r.note = d ? "diameter " + std::to_string(*d) : "disconnected";
  }
  return r;
}

GoodnessReport is_good(const Graph& g, double p, const CheckMode& mode) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  GoodnessReport rep;
  rep.n = g.num_vertices();
  rep.p = p;
  rep.exact = mode.exact;
  rep.properties = {check_p1(g, p, mode), check_p2(g, p, mode), check_p3(g, p, mode),
                    check_p4(g, p, mode), check_p5(g, p),       check_p6(g, p)};
  return rep;
}

// theta -----------------------------------------------------------------------------

ThetaResult theta(const Graph& g, Vertex u, std::size_t i) {
  const auto nb = g.neighbors(u);
  const std::size_t d = nb.size();
  ThetaResult out;
  if (i == 0 || d == 0) {
    out.upper_bound = 0;
    return out;
  }
  // cover[j]: local indices of N(u) inside N^+(nb[j]).
  std::vector<std::uint64_t> cover(d, 0);
  std::vector<std::vector<std::size_t>> cover_list(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      if (k == j || g.adjacent(nb[j], nb[k])) {
        if (d <= 64) cover[j] |= std::uint64_t{1} << k;
        cover_list[j].push_back(k);
      }
    }
  }

  if (d <= 20) {
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << d); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > i) continue;
      std::uint64_t covered = 0;
      for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        covered |= cover[static_cast<std::size_t>(std::countr_zero(m))];
      }
      best = std::max(best, static_cast<std::size_t>(std::popcount(covered)));
    }
    out.value = best;
    out.exact = true;
    out.upper_bound = best;
    return out;
  }

  std::vector<char> covered(d, 0);
  std::vector<char> used(d, 0);
  std::size_t total = 0;
  for (std::size_t step = 0; step < std::min(i, d); ++step) {
    std::size_t pick = d, gain_best = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (used[j]) continue;
      std::size_t gain = 0;
      for (std::size_t k : cover_list[j]) gain += covered[k] ? 0 : 1;
      if (pick == d || gain > gain_best) {
        pick = j;
        gain_best = gain;
      }
    }
    used[pick] = 1;
    for (std::size_t k : cover_list[pick]) {
      if (!covered[k]) {
        covered[k] = 1;
        ++total;
      }
    }
  }
  std::vector<std::size_t> sizes(d);
  for (std::size_t j = 0; j < d; ++j) sizes[j] = cover_list[j].size();
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  std::size_t sum = 0;
  for (std::size_t j = 0; j < std::min(i, d); ++j) sum += sizes[j];
  out.value = total;
  out.exact = false;
  out.upper_bound = std::min(sum, d);
  return out;
}

}  // namespace misproc
