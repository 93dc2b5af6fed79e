// Acceptance battery. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
//   acceptance [--out DIR] [--threads N]
//
// With --out, every run's serialized artifacts are written under DIR.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "misproc/descriptor.hpp"
#include "misproc/goodness.hpp"
#include "misproc/harness.hpp"
#include "misproc/log_switch.hpp"
#include "misproc/report.hpp"
#include "../unit/oracles.hpp"

using namespace misproc;
using nlohmann::json;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Everything one pass of the battery produces.
struct Battery {
  unsigned threads = 1;
  std::map<std::string, std::string> artifacts;  // name -> bytes
  std::uint64_t completed = 0;
  std::uint64_t verified = 0;
  std::vector<std::string> soundness_errors;
  std::map<int, Verdict> verdicts;

  ExperimentResult experiment(const std::string& name, ExperimentConfig cfg) {
    cfg.threads = threads;
    cfg.keep_final_states = true;
    ExperimentResult r;
    try {
      r = run_experiment(cfg);
    } catch (const SoundnessError& e) {
      soundness_errors.push_back(name + ": " + e.what());
      throw;
    }
    const Graph g = GraphDescriptor::parse(r.config.graph).build();
    for (auto& t : r.trials) {
      if (t.capped()) continue;
      ++completed;
      if (verify_mis(g, black_set(t.final_state))) {
        ++verified;
      } else {
        soundness_errors.push_back(name + ": trial seed " + std::to_string(t.seed));
      }
      t.final_state.colors.clear();
    }
    artifacts[name + "/trials.csv"] = trials_csv(r);
    artifacts[name + "/summary.json"] = summary_document(r).dump(2) + "\n";
    return r;
  }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

// Canonical representatives of all graphs on n vertices up to isomorphism.
std::vector<Graph> all_graphs(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<Vertex> perm(n);
  std::set<std::uint32_t> canon;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::uint32_t best = ~0u;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        Vertex a = perm[pairs[i].first], b = perm[pairs[i].second];
        if (a > b) std::swap(a, b);
        for (std::size_t j = 0; j < pairs.size(); ++j) {
          if (pairs[j] == std::pair<Vertex, Vertex>{a, b}) m |= 1u << j;
        }
      }
      best = std::min(best, m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    canon.insert(best);
  }
  std::vector<Graph> out;
  for (std::uint32_t m : canon) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (m >> i & 1) edges.push_back(pairs[i]);
    }
    out.push_back(Graph::from_edges(n, edges));
  }
  return out;
}

// 2: exact-oracle equivalence on every graph with at most 4 vertices.
void criterion2(Battery& b) {
  constexpr std::uint64_t kTrials = 10000;
  std::vector<Graph> graphs;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (auto& g : all_graphs(n)) graphs.push_back(std::move(g));
  }
  std::ostringstream csv;
  csv << "graph,state,exact,mc_mean,se\n";
  std::size_t cases = 0, worst_idx = 0;
  double worst = 0.0;
  bool ok = graphs.size() == 18;
  std::uint64_t master = 20000;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    const std::size_t n = g.num_vertices();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Color> c(n);
      for (std::size_t u = 0; u < n; ++u) c[u] = (mask >> u & 1) ? Color::Black : Color::White;
      const StateVector start{ProcessKind::TwoState, c, 0};
      double sum = 0, sum2 = 0;
      for (std::uint64_t i = 0; i < kTrials; ++i) {
        Simulation sim(g, start, trial_seed(master, i));
        while (!sim.stabilized()) sim.advance();
        ++b.completed;
        if (verify_mis(g, black_set(sim.state()))) {
          ++b.verified;
        } else {
          b.soundness_errors.push_back("exact-oracle graph " + std::to_string(gi));
        }
        const double t = static_cast<double>(sim.round());
        sum += t;
        sum2 += t * t;
      }
      ++master;
      const double mean = sum / kTrials;
      const double se = std::sqrt(std::max(0.0, sum2 / kTrials - mean * mean) / kTrials);
      const double exact = oracle::exact_mean(g, ProcessKind::TwoState, c);
      const double z = se > 0 ? std::abs(mean - exact) / se : (mean == exact ? 0.0 : 1e9);
      if (z > 3.0) ok = false;
      if (z > worst) {
        worst = z;
        worst_idx = cases;
      }
      csv << gi << ',' << mask << ',' << json(exact).dump() << ',' << json(mean).dump() << ','
          << json(se).dump() << '\n';
      ++cases;
    }
  }
  b.artifacts["exact-oracle/means.csv"] = csv.str();
  b.verdicts[2] = {ok, std::to_string(graphs.size()) + " graphs, " + std::to_string(cases) +
                           " initial states; max |z| = " + fmt(worst) + " (case " +
                           std::to_string(worst_idx) + ")"};
}

// 3: two-state on K_512 from all-white.
void criterion3(Battery& b) {
  ExperimentConfig cfg;
  cfg.graph = "complete:n=512";
  cfg.trials = 20000;
  cfg.master_seed = 3;
  const auto r = b.experiment("thm8-k512", cfg);
  const double median_cap = 4 * std::log2(512.0);
  bool ok = r.summary.capped == 0 && r.summary.median <= median_cap;
  std::string rho;
  for (std::uint64_t k : {2, 3}) {
    const auto& row = r.tail.at(k - 1);
    if (!row.ratio) {
      ok = false;
      rho += " rho_" + std::to_string(k) + "=n/a";
      continue;
    }
    ok = ok && *row.ratio >= 0.05 && *row.ratio <= 0.8;
    rho += " rho_" + std::to_string(k) + "=" + fmt(*row.ratio);
  }
  b.verdicts[3] = {ok, "median " + fmt(r.summary.median) + " <= " + fmt(median_cap) + ";" + rho +
                           " in [0.05, 0.8]"};
}

// 4: three-state on K_n.
void criterion4(Battery& b) {
  std::map<std::size_t, double> means;
  bool ok = true;
  std::string detail;
  for (std::size_t n : {256, 1024, 4096}) {
    ExperimentConfig cfg;
    cfg.process = ProcessKind::ThreeState;
    cfg.graph = "complete:n=" + std::to_string(n);
    cfg.trials = 2000;
    cfg.master_seed = 40 + n;
    const auto r = b.experiment("rem10-k" + std::to_string(n), cfg);
    means[n] = r.summary.mean;
    const double cap = 6 * std::log2(static_cast<double>(n));
    ok = ok && r.summary.capped == 0 && r.summary.mean <= cap;
    detail += "mean(" + std::to_string(n) + ")=" + fmt(r.summary.mean) + "<=" + fmt(cap) + " ";
  }
  const double growth = means[4096] / means[256];
  const double limit = 2.5 * (std::log2(4096.0) / std::log2(256.0));
  ok = ok && growth <= limit;
  b.verdicts[4] = {ok, detail + "; growth " + fmt(growth) + " <= " + fmt(limit)};
}

// 5: 64 disjoint K_64 against K_4096.
void criterion5(Battery& b) {
  ExperimentConfig cfg;
  cfg.graph = "cliques:count=64,size=64";
  cfg.trials = 500;
  cfg.master_seed = 5;
  const auto cl = b.experiment("rem9-cliques", cfg);
  cfg.graph = "complete:n=4096";
  cfg.master_seed = 55;
  const auto kn = b.experiment("rem9-k4096", cfg);
  const double cap = 30 * std::pow(std::log2(4096.0), 2);
  const bool ok = cl.summary.capped == 0 && kn.summary.capped == 0 &&
                  cl.summary.mean > kn.summary.mean && static_cast<double>(cl.summary.max) <= cap;
  b.verdicts[5] = {ok, "cliques mean " + fmt(cl.summary.mean) + " > K_4096 mean " +
                           fmt(kn.summary.mean) + "; max " + std::to_string(cl.summary.max) +
                           " <= " + fmt(cap)};
}

// 6: uniform random trees.
void criterion6(Battery& b) {
  std::vector<double> xs, ys;
  bool ok = true;
  std::string detail;
  for (std::size_t n : {256, 1024, 4096}) {
    ExperimentConfig cfg;
    cfg.graph = "tree:n=" + std::to_string(n) + ",seed=" + std::to_string(n);
    cfg.init = InitPolicy::UniformRandom;
    cfg.trials = 200;
    cfg.master_seed = 60 + n;
    const auto r = b.experiment("thm11-tree" + std::to_string(n), cfg);
    const double lg = std::log2(static_cast<double>(n));
    ok = ok && r.summary.capped == 0 && static_cast<double>(r.summary.max) <= 40 * lg;
    xs.push_back(lg);
    ys.push_back(static_cast<double>(r.summary.max));
    detail += "max(" + std::to_string(n) + ")=" + std::to_string(r.summary.max) + " ";
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  // Linear growth through the origin from the smallest size, with factor-2 slack.
  const double limit = 2.0 * ys.front() / xs.front();
  ok = ok && slope <= limit;
  b.verdicts[6] = {ok, detail + "<= 40 log2 n; slope " + fmt(slope) + " <= " + fmt(limit)};
}

// 7: sparse G(n, p) against the max-degree bound.
void criterion7(Battery& b) {
  ExperimentConfig cfg;
  cfg.graph = "gnp:n=2048,p=" + json(4.0 / 2048).dump() + ",seed=7";
  cfg.trials = 200;
  cfg.master_seed = 7;
  const auto r = b.experiment("thm12-gnp", cfg);
  const Graph g = GraphDescriptor::parse(cfg.graph).build();
  const double delta = static_cast<double>(g.max_degree());
  const double cap = 10 * delta * std::log2(2048.0);
  const bool ok = r.summary.capped == 0 && static_cast<double>(r.summary.max) <= cap;
  b.verdicts[7] = {ok, "Delta " + fmt(delta) + "; max " + std::to_string(r.summary.max) + " <= " +
                           fmt(cap)};
}

// 8: G(n, p) at p = sqrt(ln n / n) from three initializations.
void criterion8(Battery& b) {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {1024, 2048}) {
    const double p = std::sqrt(std::log(static_cast<double>(n)) / n);
    const double cap = 10 * std::pow(std::log2(static_cast<double>(n)), 3);
    std::uint64_t worst = 0;
    for (auto init : {InitPolicy::AllBlack, InitPolicy::AllWhite, InitPolicy::UniformRandom}) {
      ExperimentConfig cfg;
      cfg.graph = "gnp:n=" + std::to_string(n) + ",p=" + json(p).dump() + ",seed=8";
      cfg.init = init;
      cfg.trials = 100;
      cfg.master_seed = 80 + n + static_cast<std::uint64_t>(init);
      const auto r = b.experiment("thm19-n" + std::to_string(n) + "-" + to_string(init), cfg);
      ok = ok && r.summary.capped == 0 && static_cast<double>(r.summary.max) <= cap;
      worst = std::max(worst, r.summary.max);
    }
    detail += "max(" + std::to_string(n) + ")=" + std::to_string(worst) + "<=" + fmt(cap) + " ";
  }
  b.verdicts[8] = {ok, detail};
}

// 9: three-color with default switch parameters.
void criterion9(Battery& b) {
  const SwitchParams sp{};
  const double cap = std::min(1e6, 200 * sp.a * std::log(1024.0));
  bool ok = true;
  std::uint64_t worst = 0;
  std::size_t runs = 0;
  for (const std::string graph : {"gnp:n=1024,p=0.5,seed=9", "complete:n=1024"}) {
    struct Init {
      InitPolicy colors;
      SwitchInit levels;
    };
    for (const Init init : {Init{InitPolicy::AllGray, SwitchInit::AllFive},
                            Init{InitPolicy::AllBlack, SwitchInit::UniformRandom},
                            Init{InitPolicy::UniformRandom, SwitchInit::UniformRandom}}) {
      ExperimentConfig cfg;
      cfg.process = ProcessKind::ThreeColor;
      cfg.graph = graph;
      cfg.init = init.colors;
      cfg.switch_init = init.levels;
      cfg.trials = 50;
      cfg.master_seed = 90 + runs;
      const auto r = b.experiment("thm32-" + std::to_string(runs++), cfg);
      ok = ok && r.summary.capped == 0 && static_cast<double>(r.summary.max) <= cap;
      worst = std::max(worst, r.summary.max);
    }
  }
  b.verdicts[9] = {ok, std::to_string(runs) + " runs x 50 trials; max " + std::to_string(worst) +
                           " <= " + fmt(cap, 7)};
}

// 10: switch run-length audit.
void criterion10(Battery& b) {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {64, 1024}) {
    const Graph g = gen_complete(n);
    int violated = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto init = switch_init(n, SwitchInit::UniformRandom, seed);
      const auto hist = switch_history(g, init, CoinStream(seed), n);
      AuditOptions opts;
      opts.diam_le_2 = true;
      opts.n = n;
      const auto audit = run_length_audit(hist, opts);
      violated += audit.passed() ? 0 : 1;
      ok = ok && audit.count(SwitchProperty::S3, true) == 0;
      b.artifacts["lemma27-k" + std::to_string(n) + "-seed" + std::to_string(seed) + ".json"] =
          to_json(audit, opts).dump(2) + "\n";
    }
    ok = ok && violated <= 1;
    detail += "K_" + std::to_string(n) + ": " + std::to_string(violated) + "/3 seeds violated; ";
  }
  b.verdicts[10] = {ok, detail + "S3 after round 7 clean"};
}

// 11: Lemma 6 and 7 probability bounds.
void criterion11(Battery& b) {
  constexpr std::uint64_t kTrials = 100000;
  bool ok = true;
  std::string detail;
  json doc = json::array();
  auto record = [&](const std::string& name, const ProbabilityCheck& c, double exact) {
    ok = ok && c.passes();
    doc.push_back({{"check", name}, {"estimate", c.estimate}, {"se", c.se}, {"bound", c.bound},
                   {"rounds", c.rounds}, {"exact", exact}});
    detail += name + "=" + fmt(c.estimate, 3) + ">=" + fmt(c.bound, 3) + " ";
  };
  std::uint64_t seed = 110;
  for (std::uint64_t k : {1, 2, 4, 8}) {
    const auto c = lemma6_check(k, kTrials, seed++);
    const double exact = oracle::star_center_stable(k, oracle::ceil_log2_plus1(k));
    record("L6k" + std::to_string(k), c, exact);
    if (k == 1) ok = ok && std::abs(c.estimate - 0.25) <= 3 * c.se;
  }
  for (const auto& ks : std::vector<std::vector<std::uint64_t>>{{1}, {1, 1, 1, 1}, {2, 4}}) {
    const auto c = lemma7_check(ks, kTrials, seed++);
    double miss = 1.0;
    const std::uint64_t r = oracle::ceil_log2_plus1(*std::max_element(ks.begin(), ks.end()));
    for (auto k : ks) miss *= 1.0 - oracle::star_center_stable(k, r);
    std::string name = "L7[";
    for (std::size_t i = 0; i < ks.size(); ++i) name += (i ? "," : "") + std::to_string(ks[i]);
    record(name + "]", c, 1.0 - miss);
  }
  b.artifacts["lemma6-7.json"] = doc.dump(2) + "\n";
  b.verdicts[11] = {ok, detail};
}

// 12: goodness of sampled G(200, 0.2).
void criterion12(Battery& b) {
  int p56 = 0, witnesses = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = gen_gnp(200, 0.2, 1200 + seed);
    const auto rep = is_good(g, 0.2, CheckMode::Sampled(20, seed));
    const bool p5 = rep.properties[4].status == CheckStatus::Pass;
    const bool p6 = rep.properties[5].status != CheckStatus::Fail;
    p56 += (p5 && p6) ? 1 : 0;
    for (std::size_t k : {0, 1, 3}) witnesses += rep.properties[k].witness ? 1 : 0;
    b.artifacts["lemma18/g" + std::to_string(seed) + ".json"] = to_json(rep).dump(2) + "\n";
  }
  b.verdicts[12] = {p56 >= 49 && witnesses == 0,
                    "P5/P6 pass on " + std::to_string(p56) + "/50; P1/P2/P4 witnesses " +
                        std::to_string(witnesses)};
}

void run_battery(Battery& b) {
  using Fn = void (*)(Battery&);
  const std::vector<std::pair<int, Fn>> criteria{
      {2, criterion2},  {3, criterion3},  {4, criterion4},   {5, criterion5},
      {6, criterion6},  {7, criterion7},  {8, criterion8},   {9, criterion9},
      {10, criterion10}, {11, criterion11}, {12, criterion12}};
  for (const auto& [id, fn] : criteria) {
    try {
      fn(b);
    } catch (const std::exception& e) {
      b.verdicts[id] = {false, std::string("aborted: ") + e.what()};
    }
  }
  b.verdicts[1] = {b.soundness_errors.empty() && b.completed >= 100000 && b.verified == b.completed,
                   std::to_string(b.verified) + "/" + std::to_string(b.completed) +
                       " completed trials verified as MIS"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out" && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (a == "--threads" && i + 1 < argc) {
      threads = static_cast<unsigned>(std::stoul(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--out DIR] [--threads N]\n";
      return 2;
    }
  }

  Battery first;
  first.threads = threads;
  run_battery(first);

  // Repeat everything with a different worker count and compare bytes.
  Battery second;
  second.threads = threads == 1 ? 2 : 1;
  run_battery(second);
  std::size_t differing = 0;
  for (const auto& [name, bytes] : first.artifacts) {
    const auto it = second.artifacts.find(name);
    if (it == second.artifacts.end() || it->second != bytes) ++differing;
  }
  differing += second.artifacts.size() > first.artifacts.size() ? 1 : 0;
  first.verdicts[13] = {differing == 0 && !first.artifacts.empty(),
                        std::to_string(first.artifacts.size()) + " artifacts, " +
                            std::to_string(differing) + " differ on rerun"};

  if (!out_dir.empty()) {
    for (const auto& [name, bytes] : first.artifacts) {
      const std::filesystem::path p = std::filesystem::path(out_dir) / name;
      std::filesystem::create_directories(p.parent_path());
      std::ofstream(p, std::ios::binary) << bytes;
    }
  }

  bool all = true;
  for (int id = 1; id <= 13; ++id) {
    const auto& v = first.verdicts[id];
    all = all && v.pass;
    std::printf("criterion %2d: %s  %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
  }
  for (const auto& e : first.soundness_errors) std::printf("  soundness: %s\n", e.c_str());
  return all ? 0 : 1;
}
