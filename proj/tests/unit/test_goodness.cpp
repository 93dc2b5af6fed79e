#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "misproc/coins.hpp"
#include "misproc/goodness.hpp"

using namespace misproc;

namespace {

std::vector<std::uint32_t> adj_masks(const Graph& g) {
  std::vector<std::uint32_t> m(g.num_vertices(), 0);
  for (auto [u, v] : g.edges()) {
    m[u] |= 1u << v;
    m[v] |= 1u << u;
  }
  return m;
}

// N(S) excludes S itself.
std::uint32_t open_nbhd(const std::vector<std::uint32_t>& adj, std::uint32_t set) {
  std::uint32_t out = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    if (set >> u & 1) out |= adj[u];
  }
  return out & ~set;
}

// Brute-force (P1): some nonempty S with avg degree above max{8p|S|, 4 ln n}.
bool p1_brute_fails(const Graph& g, double p) {
  const auto adj = adj_masks(g);
  const std::size_t n = g.num_vertices();
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::size_t twice = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (s >> u & 1) twice += std::popcount(adj[u] & s);
    }
    const double size = std::popcount(s);
    if (twice / size > std::max(8 * p * size, 4 * std::log(double(n))) + 1e-9) return true;
  }
  return false;
}

// Brute-force (P3) with an explicit slack, over all disjoint (S, T, I).
bool p3_brute_fails(const Graph& g, double slack) {
  const auto adj = adj_masks(g);
  const std::size_t n = g.num_vertices();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    std::uint32_t s = 0, t = 0, iset = 0;
    std::size_t c = code;
    for (std::size_t u = 0; u < n; ++u, c /= 4) {
      if (c % 4 == 1) s |= 1u << u;
      if (c % 4 == 2) t |= 1u << u;
      if (c % 4 == 3) iset |= 1u << u;
    }
    if (std::popcount(s) < 2 * std::popcount(t)) continue;
    if (open_nbhd(adj, iset) & (s | t)) continue;
    const std::uint32_t closed_si = (s | iset) | open_nbhd(adj, s | iset);
    const std::uint32_t closed_i = iset | open_nbhd(adj, iset);
    const int lhs = std::popcount(open_nbhd(adj, t) & ~closed_si);
    const int rhs = std::popcount(open_nbhd(adj, s) & ~closed_i);
    if (lhs > rhs + slack + 1e-9) return true;
  }
  return false;
}

// Brute-force theta: max over S within N(u), |S| <= i, of |N(u) ∩ N^+(S)|.
std::size_t theta_brute(const Graph& g, Vertex u, std::size_t i) {
  const auto adj = adj_masks(g);
  const std::uint32_t nu = adj[u];
  std::size_t best = 0;
  for (std::uint32_t s = nu;; s = (s - 1) & nu) {
    if (static_cast<std::size_t>(std::popcount(s)) <= i) {
      best = std::max<std::size_t>(best, std::popcount(nu & (s | open_nbhd(adj, s))));
    }
    if (s == 0) break;
  }
  return best;
}

void check_witnesses(const Graph& g, double p, const GoodnessReport& rep) {
  for (std::size_t k = 0; k < 6; ++k) {
    const auto& r = rep.properties[k];
    if (r.status == CheckStatus::Fail) {
      REQUIRE(r.witness.has_value());
      CHECK(witness_violates(g, p, k, *r.witness));
    }
  }
}

}  // namespace

TEST_CASE("P1 examples") {
  CHECK(check_p1(gen_complete(8), 1.0, CheckMode::Exact()).status == CheckStatus::Pass);
  CHECK(check_p1(gen_complete(8), 1e-6, CheckMode::Exact()).status == CheckStatus::Pass);
  CHECK(check_p1(Graph::from_edges(10, {}), 0.3, CheckMode::Exact()).status == CheckStatus::Pass);
  // K_16: |S| - 1 = 15 exceeds 4 ln 16.
  const auto r = check_p1(gen_complete(16), 1e-6, CheckMode::Exact());
  CHECK(r.status == CheckStatus::Fail);
  REQUIRE(r.witness.has_value());
  CHECK(p1_violated(gen_complete(16), 1e-6, r.witness->s));
  CHECK_THROWS_AS(check_p1(gen_complete(17), 0.5, CheckMode::Exact()), ExactModeCapError);
}

TEST_CASE("P1 exact agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 6 + seed % 7;
    const double p = (seed % 5 + 1) * 0.01;
    const Graph g = gen_gnp(n, 0.4 + 0.15 * (seed % 4), seed);
    const bool fails = check_p1(g, p, CheckMode::Exact()).status == CheckStatus::Fail;
    CHECK(fails == p1_brute_fails(g, p));
  }
}

TEST_CASE("P2 examples") {
  CHECK(check_p2(gen_complete(12), 0.5, CheckMode::Exact()).status == CheckStatus::Pass);
  CHECK(check_p2(gen_star(63), 0.5, CheckMode::Sampled(5, 1)).status != CheckStatus::Fail);
  // A qualifying S with many poorly connected outsiders.
  const Graph empty = Graph::from_edges(1000, {});
  std::vector<Vertex> s(300);
  std::iota(s.begin(), s.end(), 0);
  CHECK(p2_violated(empty, 1.0, s));
  const auto r = check_p2(empty, 1.0, CheckMode::Sampled(3, 1));
  CHECK(r.status == CheckStatus::Fail);
  REQUIRE(r.witness.has_value());
  CHECK(p2_violated(empty, 1.0, r.witness->s));
}

TEST_CASE("P3 examples and the explicit-slack search") {
  // T empty never violates.
  CHECK(!p3_violated(gen_complete(4), 0.0, {0, 1}, {}, {}));
  CHECK(check_p3(gen_path(4), 0.5, CheckMode::Exact()).status == CheckStatus::Pass);
  CHECK(check_p3(gen_complete(12), 0.9, CheckMode::Exact()).status == CheckStatus::Pass);
  CHECK_THROWS_AS(check_p3(gen_complete(13), 0.5, CheckMode::Exact()), ExactModeCapError);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = gen_gnp(5 + seed % 3, 0.45, seed);
    for (double slack : {0.0, 1.0, 2.0}) {
      const auto w = find_p3_violation_exact(g, slack);
      CHECK(w.has_value() == p3_brute_fails(g, slack));
      if (w) CHECK(p3_violated(g, slack, w->s, w->t, w->i));
    }
  }
}

TEST_CASE("P4 examples") {
  CHECK(check_p4(gen_complete(8), 0.5, CheckMode::Exact()).status == CheckStatus::Pass);
  CHECK(check_p4(gen_complete(2), 0.01, CheckMode::Exact()).status == CheckStatus::Pass);
  CHECK(!p4_violated(gen_complete(2), 0.01, {0}, {1}));
  // |T| threshold ln(n)/p below 1 makes the property vacuous.
  CHECK(check_p4(gen_complete(10), 0.99, CheckMode::Exact()).status == CheckStatus::Pass);
  const Graph kb = gen_complete_bipartite(40, 40);
  std::vector<Vertex> left(40), right(40);
  std::iota(left.begin(), left.end(), 0);
  std::iota(right.begin(), right.end(), 40);
  CHECK(p4_violated(kb, 0.001, left, right));
  const auto r = check_p4(kb, 0.001, CheckMode::Sampled(10, 2));
  CHECK(r.status == CheckStatus::Fail);
  REQUIRE(r.witness.has_value());
  CHECK(p4_violated(kb, 0.001, r.witness->s, r.witness->t));
}

TEST_CASE("P5 examples") {
  CHECK(check_p5(gen_complete(10), 1.0).status == CheckStatus::Pass);
  const auto r = check_p5(gen_complete_bipartite(2, 1000), 0.001);
  CHECK(r.status == CheckStatus::Fail);
  REQUIRE(r.witness.has_value());
  REQUIRE(r.witness->pair.has_value());
  CHECK(*r.witness->pair == std::pair<Vertex, Vertex>{0, 1});
  CHECK(check_p5(gen_random_tree(50, 1), 0.1).status == CheckStatus::Pass);
}

TEST_CASE("P5 is invariant under relabeling") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_gnp(80, 0.3, seed);
    std::vector<Vertex> perm(80);
    std::iota(perm.begin(), perm.end(), 0);
    KeyedSequence seq(CoinStream(seed), Stream::Sampling, 0);
    for (std::size_t i = 79; i > 0; --i) std::swap(perm[i], perm[seq.next_below(i + 1)]);
    const Graph h = relabel(g, perm);
    for (double p : {0.05, 0.3, 0.5}) CHECK(check_p5(g, p).status == check_p5(h, p).status);
  }
}

TEST_CASE("P6 examples") {
  CHECK(check_p6(gen_complete(10), 0.0).status == CheckStatus::Skipped);
  CHECK(check_p6(gen_complete(10), 1.0).status == CheckStatus::Pass);
  // 2 sqrt(ln 4 / 4) > 1, so no p in [0, 1] triggers the condition at n = 4.
  CHECK(check_p6(gen_path(4), 1.0).status == CheckStatus::Skipped);
  CHECK(check_p6(gen_path(9), 1.0).status == CheckStatus::Fail);
}

TEST_CASE("is_good") {
  const auto k8 = is_good(gen_complete(8), 1.0, CheckMode::Exact());
  CHECK(k8.good());
  CHECK(!k8.inconclusive());
  const Graph kb = gen_complete_bipartite(2, 1000);
  const auto bad = is_good(kb, 0.001, CheckMode::Sampled(5, 1));
  CHECK(!bad.good());
  CHECK(bad.properties[4].status == CheckStatus::Fail);
  check_witnesses(kb, 0.001, bad);
  const auto sampled = is_good(gen_gnp(100, 0.2, 3), 0.2, CheckMode::Sampled(5, 3));
  CHECK(sampled.inconclusive() == sampled.good());
}

TEST_CASE("sampled mode never contradicts an exact pass") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen_gnp(12, 0.2 + 0.03 * seed, seed);
    const double p = 0.02 + 0.01 * seed;
    const auto exact = is_good(g, p, CheckMode::Exact());
    const auto sampled = is_good(g, p, CheckMode::Sampled(30, seed));
    check_witnesses(g, p, exact);
    check_witnesses(g, p, sampled);
    for (std::size_t k = 0; k < 6; ++k) {
      if (exact.properties[k].status == CheckStatus::Pass) {
        CHECK(sampled.properties[k].status != CheckStatus::Fail);
      }
    }
  }
}

TEST_CASE("theta") {
  const Graph star = gen_star(6);
  for (std::size_t i = 1; i <= 8; ++i) CHECK(theta(star, 0, i).value == std::min<std::size_t>(i, 6));
  CHECK(theta(gen_complete(4), 0, 1).value == 3);
  CHECK(theta(gen_complete(4), 0, 0).value == 0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_gnp(14, 0.35, seed);
    for (Vertex u = 0; u < 14; ++u) {
      std::size_t prev = 0;
      for (std::size_t i = 0; i <= g.degree(u) + 1; ++i) {
        const auto th = theta(g, u, i);
        CHECK(th.exact);
        CHECK(th.value == theta_brute(g, u, i));
        CHECK(th.value >= prev);
        CHECK(th.value <= g.degree(u));
        CHECK(th.value >= std::min(i, g.degree(u)));
        prev = th.value;
      }
    }
  }
  const Graph big = gen_complete(30);
  const auto greedy = theta(big, 0, 2);
  CHECK(!greedy.exact);
  CHECK(greedy.value <= greedy.upper_bound);
  CHECK(greedy.upper_bound <= 29);
}
