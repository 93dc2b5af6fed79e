#include <algorithm>
#include <bit>
#include <cmath>

#include "doctest.h"
#include "misproc/descriptor.hpp"
#include "misproc/harness.hpp"
#include "oracles.hpp"

using namespace misproc;

TEST_CASE("verify_mis") {
  const Graph p3 = gen_path(3);
  CHECK(verify_mis(p3, VertexSet(3, {0, 2})));
  CHECK(!verify_mis(p3, VertexSet(3, {0, 1})));
  CHECK(!verify_mis(p3, VertexSet(3, {0})));
  CHECK(verify_mis(p3, VertexSet(3, {1})));
  CHECK(verify_mis(Graph::from_edges(2, {}), VertexSet::full(2)));
}

TEST_CASE("trial seeds") {
  CHECK(trial_seed(1, 0) == CoinStream(1).word(Stream::TrialSeed, 0, 0));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("run_experiment on K_1 and K_2") {
  ExperimentConfig cfg;
  cfg.graph = "complete:n=1";
  cfg.trials = 100000;
  cfg.master_seed = 3;
  const auto k1 = run_experiment(cfg);
  CHECK(k1.summary.completed == 100000);
  CHECK(std::abs(k1.summary.mean - 2.0) < 0.05);
  cfg.graph = "complete:n=2";
  const auto k2 = run_experiment(cfg);
  const double exact = oracle::exact_mean(gen_complete(2), ProcessKind::TwoState,
                                          {Color::White, Color::White});
  CHECK(std::abs(k2.summary.mean - exact) < 0.05);
  for (const auto& t : k2.trials) CHECK(*t.stabilization_round >= 1);
}

TEST_CASE("run_experiment is deterministic and thread-count independent") {
  ExperimentConfig cfg;
  cfg.process = ProcessKind::ThreeColor;
  cfg.graph = "gnp:n=60,p=0.2,seed=4";
  cfg.init = InitPolicy::AllGray;
  cfg.trials = 12;
  cfg.metric_stride = 3;
  cfg.switch_params = {16.0, 0.25};
  cfg.keep_final_states = true;
  const auto a = run_experiment(cfg);
  cfg.threads = 4;
  const auto b = run_experiment(cfg);
  CHECK(a.trials == b.trials);
  CHECK(a.summary == b.summary);
  const Graph g = GraphDescriptor::parse(cfg.graph).build();
  for (const auto& t : a.trials) {
    REQUIRE(!t.capped());
    CHECK(verify_mis(g, black_set(t.final_state)));
    CHECK(t.metrics.back().round == *t.stabilization_round);
  }
  cfg.keep_final_states = false;
  CHECK(run_experiment(cfg).trials.front().final_state.colors.empty());
}

TEST_CASE("every init policy yields verified MIS finals") {
  const Graph g = gen_gnp(80, 0.1, 9);
  for (auto kind : {ProcessKind::TwoState, ProcessKind::ThreeState}) {
    for (auto init : {InitPolicy::AllWhite, InitPolicy::AllBlack, InitPolicy::UniformRandom,
                      InitPolicy::Alternating}) {
      ExperimentConfig cfg;
      cfg.process = kind;
      cfg.graph = "gnp:n=80,p=0.1,seed=9";
      cfg.init = init;
      cfg.trials = 30;
      cfg.keep_final_states = true;
      const auto r = run_experiment(cfg, g);
      CHECK(r.summary.capped == 0);
      for (const auto& t : r.trials) CHECK(verify_mis(g, black_set(t.final_state)));
    }
  }
}

TEST_CASE("summary recomputes from per-trial data") {
  ExperimentConfig cfg;
  cfg.graph = "tree:n=100,seed=1";
  cfg.init = InitPolicy::UniformRandom;
  cfg.trials = 101;
  const auto r = run_experiment(cfg);
  CHECK(summarize(r.trials) == r.summary);
  std::vector<std::uint64_t> times;
  for (const auto& t : r.trials) times.push_back(*t.stabilization_round);
  std::uint64_t sum = 0;
  for (auto t : times) sum += t;
  CHECK(r.summary.sum == sum);
  CHECK(r.summary.mean == doctest::Approx(sum / 101.0));
  std::sort(times.begin(), times.end());
  CHECK(r.summary.median == times[50]);
  CHECK(r.summary.min == times.front());
  CHECK(r.summary.max == times.back());
  CHECK(r.summary.q90 == times[static_cast<std::size_t>(std::ceil(0.9 * 101)) - 1]);
}

TEST_CASE("summarize_times") {
  const auto s = summarize_times({1, 2, 3, 4}, 2);
  CHECK(s.trials == 6);
  CHECK(s.completed == 4);
  CHECK(s.capped == 2);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.median == doctest::Approx(2.5));
  CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.q99 == 4);
}

TEST_CASE("tail_decay") {
  SUBCASE("times below one unit") {
    const auto rows = tail_decay(std::vector<std::uint64_t>(100, 5), 10.0);
    CHECK(rows.at(0).k == 1);
    CHECK(rows.at(0).prob == 0.0);
  }
  SUBCASE("geometric data has ratio 1/2") {
    // countl_zero of a uniform word satisfies P[T >= k] = 2^-k.
    KeyedSequence seq(CoinStream(12), Stream::Sampling, 0);
    std::vector<std::uint64_t> times(200000);
    for (auto& t : times) t = static_cast<std::uint64_t>(std::countl_zero(seq.next()));
    const auto rows = tail_decay(times, 1.0, 8);
    int reported = 0;
    for (const auto& row : rows) {
      if (!row.ratio) continue;
      ++reported;
      CHECK(std::abs(*row.ratio - 0.5) <= 3 * *row.ratio_se);
    }
    CHECK(reported >= 6);
  }
  SUBCASE("ratios need 50 hits") {
    std::vector<std::uint64_t> times(1000, 1);
    for (int i = 0; i < 49; ++i) times[i] = 3;
    const auto rows = tail_decay(times, 1.0, 4);
    CHECK(rows[0].count == 1000);
    CHECK(rows[0].ratio.has_value());
    CHECK(rows[1].count == 49);
    CHECK(!rows[1].ratio.has_value());
  }
}

TEST_CASE("lemma 6 and 7 checks") {
  CHECK(ceil_log2_plus1(1) == 1);
  CHECK(ceil_log2_plus1(8) == 4);
  CHECK(oracle::star_center_stable(1, 1) == doctest::Approx(0.25));
  const auto k1 = lemma6_check(1, 100000, 1);
  CHECK(k1.rounds == 1);
  CHECK(k1.bound == doctest::Approx(1.0 / (2 * std::exp(1.0))));
  CHECK(k1.passes());
  CHECK(std::abs(k1.estimate - 0.25) <= 3 * k1.se);
  const auto k8 = lemma6_check(8, 50000, 2);
  CHECK(k8.rounds == 4);
  CHECK(k8.passes());
  CHECK(std::abs(k8.estimate - oracle::star_center_stable(8, 4)) <= 3 * k8.se);
  const auto one = lemma7_check({1}, 50000, 3);
  CHECK(one.bound == doctest::Approx(0.1));
  CHECK(one.passes());
  const auto four = lemma7_check({1, 1, 1, 1}, 50000, 4);
  CHECK(four.bound == doctest::Approx(0.2));
  const double miss = 1 - oracle::star_center_stable(1, 1);
  CHECK(std::abs(four.estimate - (1 - std::pow(miss, 4))) <= 3 * four.se);
  const auto mixed = lemma7_check({2, 4}, 50000, 5);
  const double p_mixed = 1 - (1 - oracle::star_center_stable(2, 3)) * (1 - oracle::star_center_stable(4, 3));
  CHECK(std::abs(mixed.estimate - p_mixed) <= 3 * mixed.se);
  CHECK_THROWS(lemma6_check(0, 10, 0));
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS(cfg.validate());
  cfg.trials = 1;
  cfg.max_rounds = 0;
  CHECK_THROWS(cfg.validate());
}
