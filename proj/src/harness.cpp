#include "misproc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "misproc/coins.hpp"
#include "misproc/descriptor.hpp"

namespace misproc {

bool verify_mis(const Graph& g, const VertexSet& black) {
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    bool black_neighbor = false;
    for (Vertex v : g.neighbors(u)) {
      if (black.contains(v)) {
        black_neighbor = true;
        break;
      }
    }
    if (black.contains(u) == black_neighbor) return false;
  }
  return true;
}

VertexSet black_set(const StateVector& s) {
  VertexSet out(s.size());
  for (Vertex u = 0; u < s.size(); ++u) {
    if (is_black(s.colors[u])) out.insert(u);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return CoinStream(master_seed).word(Stream::TrialSeed, 0, trial);
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (init == InitPolicy::AllGray && process != ProcessKind::ThreeColor) {
    throw std::invalid_argument("all-gray init requires the three-color process");
  }
  if (process == ProcessKind::ThreeColor) switch_params.validate();
}

Summary summarize_times(std::vector<std::uint64_t> times, std::uint64_t capped) {
  Summary s;
  s.completed = times.size();
  s.capped = capped;
  s.trials = s.completed + capped;
  if (times.empty()) return s;
  std::sort(times.begin(), times.end());
  unsigned __int128 squares = 0;
  for (auto t : times) {
    s.sum += t;
    squares += static_cast<unsigned __int128>(t) * t;
  }
  const double count = static_cast<double>(times.size());
  s.mean = static_cast<double>(s.sum) / count;
  if (times.size() > 1) {
    // (sum t^2 - sum^2 / N) / (N - 1), from exact integer sums.
    const long double sum = static_cast<long double>(s.sum);
    const long double ss = static_cast<long double>(squares) - sum * sum / count;
    s.stddev = static_cast<double>(std::sqrt(std::max<long double>(0, ss / (count - 1))));
  }
  const std::size_t mid = times.size() / 2;
  s.median = times.size() % 2 == 1 ? static_cast<double>(times[mid])
                                   : (static_cast<double>(times[mid - 1]) + times[mid]) / 2.0;
  s.min = times.front();
  s.max = times.back();
  const auto rank = [&](double q) {
    auto r = static_cast<std::size_t>(std::ceil(q * count));
    return times[std::clamp<std::size_t>(r, 1, times.size()) - 1];
  };
  s.q90 = rank(0.90);
  s.q99 = rank(0.99);
  return s;
}

Summary summarize(const std::vector<TrialResult>& trials) {
  std::vector<std::uint64_t> times;
  std::uint64_t capped = 0;
  for (const auto& t : trials) {
    if (t.stabilization_round) {
      times.push_back(*t.stabilization_round);
    } else {
      ++capped;
    }
  }
  return summarize_times(std::move(times), capped);
}

std::vector<TailRow> tail_decay(const std::vector<std::uint64_t>& times, double unit,
                                std::uint64_t max_k) {
  if (!(unit > 0.0)) throw std::invalid_argument("tail unit must be positive");
  const double total = static_cast<double>(times.size());
  std::vector<std::uint64_t> counts(max_k + 2, 0);
  for (std::uint64_t k = 1; k <= max_k + 1; ++k) {
    const double cut = static_cast<double>(k) * unit;
    for (auto t : times) {
      if (static_cast<double>(t) >= cut) ++counts[k];
    }
  }
  std::vector<TailRow> rows;
  for (std::uint64_t k = 1; k <= max_k; ++k) {
    TailRow row;
    row.k = k;
    row.count = counts[k];
    row.prob = total > 0 ? static_cast<double>(counts[k]) / total : 0.0;
    if (counts[k] >= 50) {
      const double rho = static_cast<double>(counts[k + 1]) / static_cast<double>(counts[k]);
      row.ratio = rho;
      row.ratio_se = std::sqrt(rho * (1.0 - rho) / static_cast<double>(counts[k]));
    }
    rows.push_back(row);
  }
  return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto d = GraphDescriptor::parse(cfg.graph);
  const Graph g = d.build(cfg.threads);
  ExperimentConfig canonical = cfg;
  canonical.graph = d.str();
  return run_experiment(canonical, g);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const Graph& g) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.config = cfg;
  result.n = g.num_vertices();
  result.m = g.num_edges();
  result.trials.resize(cfg.trials);

  TrialOptions opts;
  opts.max_rounds = cfg.max_rounds;
  opts.metric_stride = cfg.metric_stride;
  opts.switch_params = cfg.switch_params;
  opts.switch_init = cfg.switch_init;

  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.trials));
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      for (std::uint64_t i = next++; i < cfg.trials; i = next++) {
        TrialResult r = run_trial(cfg.process, g, cfg.init, trial_seed(cfg.master_seed, i), opts,
                                  cfg.graph);
        if (r.stabilization_round && !verify_mis(g, black_set(r.final_state))) {
          throw SoundnessError("trial " + std::to_string(i) +
                               " reported stabilization without an MIS");
        }
        if (!cfg.keep_final_states) r.final_state.colors.clear();
        result.trials[i] = std::move(r);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = cfg.trials;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  result.summary = summarize(result.trials);
  std::vector<std::uint64_t> times;
  for (const auto& t : result.trials) {
    if (t.stabilization_round) times.push_back(*t.stabilization_round);
  }
  const double unit = result.n > 1 ? std::log2(static_cast<double>(result.n)) : 1.0;
  result.tail = tail_decay(times, unit);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

// Star checks ---------------------------------------------------------------------

std::uint64_t ceil_log2_plus1(std::uint64_t k) {
  std::uint64_t r = 0;
  while ((std::uint64_t{1} << r) < k + 1) ++r;
  return r;
}

namespace {

ProbabilityCheck star_check(const std::vector<std::uint64_t>& ks, std::uint64_t trials,
                            std::uint64_t seed, double bound) {
  if (ks.empty()) throw std::invalid_argument("need at least one star");
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
  std::uint64_t max_k = 0;
  Graph g = gen_star(ks.front());
  std::vector<Vertex> centers{0};
  for (std::size_t j = 0; j < ks.size(); ++j) {
    if (ks[j] < 1) throw std::invalid_argument("star size must be >= 1");
    max_k = std::max(max_k, ks[j]);
    if (j > 0) {
      centers.push_back(static_cast<Vertex>(g.num_vertices()));
      g = disjoint_union(g, gen_star(ks[j]));
    }
  }
  ProbabilityCheck out;
  out.trials = trials;
  out.rounds = ceil_log2_plus1(max_k);
  out.bound = bound;
  const std::size_t n = g.num_vertices();
  for (std::uint64_t i = 0; i < trials; ++i) {
    Simulation sim(g, init_states(ProcessKind::TwoState, n, InitPolicy::AllWhite, 0),
                   trial_seed(seed, i));
    for (std::uint64_t r = 0; r < out.rounds; ++r) sim.advance();
    const auto& colors = sim.state().colors;
    bool hit = false;
    for (Vertex c : centers) {
      if (!is_black(colors[c])) continue;
      bool lonely = true;
      for (Vertex v : g.neighbors(c)) lonely = lonely && !is_black(colors[v]);
      hit = hit || lonely;
    }
    out.hits += hit ? 1 : 0;
  }
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(trials);
  out.se = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace

ProbabilityCheck lemma6_check(std::uint64_t k, std::uint64_t trials, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return star_check({k}, trials, seed, 1.0 / (2.0 * std::numbers::e * static_cast<double>(k)));
}

ProbabilityCheck lemma7_check(const std::vector<std::uint64_t>& ks, std::uint64_t trials,
                              std::uint64_t seed) {
  double sum = 0.0;
  for (auto k : ks) {
    if (k < 1) throw std::invalid_argument("each k_i must be >= 1");
    sum += 1.0 / (2.0 * static_cast<double>(k));
  }
  return star_check(ks, trials, seed, 0.2 * std::min(1.0, sum));
}

}  // namespace misproc
