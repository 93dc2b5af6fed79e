#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "misproc/coins.hpp"
#include "misproc/descriptor.hpp"
#include "misproc/goodness.hpp"
#include "misproc/report.hpp"

namespace misproc::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  out.close();
  if (!out) throw IoError("cannot write " + path);
}

unsigned default_threads() {
  if (const char* env = std::getenv("MIS_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

void check_descriptor(const std::string& flag, const std::string& text) {
  try {
    GraphDescriptor::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

void add_switch_flags(CLI::App* sub, SwitchParams& params) {
  sub->add_option("--a", params.a, "switch run-length scale a")->check(CLI::PositiveNumber);
  sub->add_option("--zeta", params.zeta, "switch parameter zeta = P[b = 0]")
      ->check(CLI::Range(0.0, 1.0));
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::vector<std::string> SweepArgs::graph_grid() const {
  std::vector<std::string> out = graphs;
  if (family.empty()) return out;
  for (auto n : sizes) {
    const std::string ns = std::to_string(n);
    if (family == "complete") {
      out.push_back("complete:n=" + ns);
    } else if (family == "tree") {
      out.push_back("tree:n=" + ns + ",seed=" + std::to_string(graph_seed));
    } else if (family == "gnp") {
      for (double p : probs) {
        out.push_back("gnp:n=" + ns + ",p=" + nlohmann::json(p).dump() +
                      ",seed=" + std::to_string(graph_seed));
      }
    } else if (family == "cliques") {
      const std::uint64_t size =
          clique_size != 0 ? clique_size
                           : static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
      if (size == 0 || n % size != 0) {
        throw UsageError("--n: " + ns + " is not a multiple of clique size " + std::to_string(size));
      }
      out.push_back("cliques:count=" + std::to_string(n / size) + ",size=" + std::to_string(size));
    } else {
      throw UsageError("--family: unknown family " + family);
    }
  }
  return out;
}

std::optional<Command> parse_args(const std::vector<std::string>& argv, std::ostream& out) {
  CLI::App app{"Self-stabilizing MIS process simulator", "misctl"};
  app.require_subcommand(1);
  Command cmd;

  std::string process = "two-state", init = "all-white", switch_init = "uniform-random";
  unsigned threads = default_threads();

  auto* run = app.add_subcommand("run", "run repeated trials of one process on one graph");
  auto& r = cmd.run;
  run->add_option("--process", process, "two-state | three-state | three-color");
  run->add_option("--graph", r.cfg.graph, "graph descriptor")->required();
  run->add_option("--init", init, "initial coloring policy");
  run->add_option("--trials", r.cfg.trials, "number of trials")->check(CLI::PositiveNumber);
  run->add_option("--seed", r.cfg.master_seed, "master seed");
  run->add_option("--max-rounds", r.cfg.max_rounds, "round cap per trial")->check(CLI::PositiveNumber);
  run->add_option("--metric-stride", r.cfg.metric_stride, "record metrics every k rounds");
  run->add_option("--switch-init", switch_init, "all-five | uniform-random");
  add_switch_flags(run, r.cfg.switch_params);
  run->add_option("--threads", threads, "worker threads (0: all cores; env MIS_THREADS)");
  run->add_option("--out", r.out_dir, "output directory for trials.csv and summary.json");
  run->add_option("--metrics", r.metrics_path, "per-round metrics CSV path");
  run->add_option("--plot", r.plot_path, "gnuplot script path");
  run->add_flag("--strict", r.strict, "exit 4 if any trial hits the round cap");
  run->add_flag("--timing", r.timing, "include wall-clock time in summary.json");

  auto* sweep = app.add_subcommand("sweep", "aggregate statistics over a parameter grid");
  auto& s = cmd.sweep;
  std::string sweep_switch_init = "uniform-random";
  sweep->add_option("--graph", s.graphs, "graph descriptor (repeatable)")->take_all();
  sweep->add_option("--family", s.family, "complete | gnp | tree | cliques");
  sweep->add_option("--n", s.sizes, "vertex counts")->delimiter(',');
  sweep->add_option("--p", s.probs, "edge probabilities (gnp)")->delimiter(',');
  sweep->add_option("--clique-size", s.clique_size, "clique size (cliques)");
  sweep->add_option("--graph-seed", s.graph_seed, "seed for random graph families");
  sweep->add_option("--process", s.processes, "processes")->delimiter(',');
  sweep->add_option("--init", s.inits, "initial coloring policies")->delimiter(',');
  sweep->add_option("--trials", s.base.trials, "trials per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", s.base.master_seed, "master seed");
  sweep->add_option("--max-rounds", s.base.max_rounds, "round cap per trial")->check(CLI::PositiveNumber);
  sweep->add_option("--switch-init", sweep_switch_init, "all-five | uniform-random");
  add_switch_flags(sweep, s.base.switch_params);
  sweep->add_option("--threads", threads, "worker threads");
  sweep->add_option("--out", s.out_path, "combined CSV path");
  sweep->add_flag("--strict", s.strict, "exit 4 if any trial hits the round cap");

  auto* good = app.add_subcommand("good", "check the (n,p)-good graph properties");
  auto& g = cmd.good;
  std::string mode = "exact";
  good->add_option("--graph", g.graph, "graph descriptor")->required();
  good->add_option("--p", g.p, "edge probability parameter")->required()->check(CLI::Range(0.0, 1.0));
  good->add_option("--mode", mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
  good->add_option("--samples", g.samples, "samples per size class (sampled mode)");
  good->add_option("--seed", g.seed, "sampling seed");
  good->add_option("--out", g.out_path, "JSON report path");
  good->add_flag("--require-exact", g.require_exact, "exit 6 when a property passed only by sampling");

  auto* audit = app.add_subcommand("switch-audit", "audit switch run lengths");
  auto& a = cmd.audit;
  std::uint64_t rounds = 0;
  audit->add_option("--graph", a.graph, "graph descriptor")->required();
  add_switch_flags(audit, a.params);
  audit->add_option("--b", a.b, "maximum on-run length");
  auto* rounds_opt = audit->add_option("--rounds", rounds, "rounds to simulate (default n)");
  audit->add_option("--seed", a.seed, "coin seed");
  audit->add_option("--switch-init", switch_init, "all-five | uniform-random");
  audit->add_option("--diam-le-2", a.diam, "auto | yes | no")->check(CLI::IsMember({"auto", "yes", "no"}));
  audit->add_option("--out", a.out_path, "JSON report path");

  auto* selftest = app.add_subcommand("selftest", "quick built-in sanity checks");

  std::vector<const char*> raw;
  raw.push_back("misctl");
  for (const auto& arg : argv) raw.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  try {
    if (run->parsed()) {
      cmd.kind = CommandKind::Run;
      check_descriptor("--graph", r.cfg.graph);
      r.cfg.graph = GraphDescriptor::parse(r.cfg.graph).str();
      r.cfg.process = parse_process(process);
      r.cfg.init = parse_init(init);
      r.cfg.switch_init = parse_switch_init(switch_init);
      r.cfg.threads = threads;
      if (!r.metrics_path.empty() && r.cfg.metric_stride == 0) r.cfg.metric_stride = 1;
      r.cfg.validate();
    } else if (sweep->parsed()) {
      cmd.kind = CommandKind::Sweep;
      if (s.processes.empty()) s.processes = {"two-state"};
      if (s.inits.empty()) s.inits = {"all-white"};
      for (const auto& p : s.processes) parse_process(p);
      for (const auto& i : s.inits) parse_init(i);
      if (!s.family.empty() && s.sizes.empty()) throw UsageError("--n: empty grid");
      if (s.family == "gnp" && s.probs.empty()) throw UsageError("--p: empty grid");
      const auto grid = s.graph_grid();
      if (grid.empty()) throw UsageError("empty grid: give --graph or --family with --n");
      for (const auto& d : grid) check_descriptor("--graph", d);
      s.base.switch_init = parse_switch_init(sweep_switch_init);
      s.base.threads = threads;
    } else if (good->parsed()) {
      cmd.kind = CommandKind::Good;
      g.exact = mode == "exact";
      check_descriptor("--graph", g.graph);
      if (g.exact) {
        const Graph graph = GraphDescriptor::parse(g.graph).build();
        if (graph.num_vertices() > kExactCapSubsets) {
          throw UsageError("--mode: exact mode cap exceeded (n = " +
                           std::to_string(graph.num_vertices()) + " > " +
                           std::to_string(kExactCapSubsets) + ")");
        }
      }
    } else if (audit->parsed()) {
      cmd.kind = CommandKind::SwitchAudit;
      check_descriptor("--graph", a.graph);
      a.init = parse_switch_init(switch_init);
      if (rounds_opt->count() > 0) a.rounds = rounds;
      a.params.validate();
    } else if (selftest->parsed()) {
      cmd.kind = CommandKind::Selftest;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cmd;
}

int cmd_run(const RunArgs& args, std::ostream& log) {
  const auto result = run_experiment(args.cfg);
  const std::filesystem::path dir(args.out_dir);
  const std::string trials_path = (dir / "trials.csv").string();
  write_file(trials_path, trials_csv(result));
  write_file((dir / "summary.json").string(), json_text(summary_document(result, args.timing)));
  if (!args.metrics_path.empty()) write_file(args.metrics_path, rounds_csv(result));
  if (!args.plot_path.empty()) write_file(args.plot_path, plot_script(result, trials_path));
  const auto& s = result.summary;
  log << to_string(args.cfg.process) << " on " << args.cfg.graph << ": " << s.completed << "/"
      << s.trials << " stabilized, mean " << s.mean << ", median " << s.median << ", max "
      << s.max << ", capped " << s.capped << "\n";
  if (args.strict && s.capped > 0) return kCappedStrict;
  return kOk;
}

int cmd_sweep(const SweepArgs& args, std::ostream& log) {
  const auto grid = args.graph_grid();
  std::vector<SweepRow> rows;
  std::uint64_t capped = 0;
  const CoinStream cells(args.base.master_seed);
  std::uint64_t cell = 0;
  for (const auto& graph_text : grid) {
    const auto d = GraphDescriptor::parse(graph_text);
    const Graph g = d.build(args.base.threads);
    for (const auto& proc : args.processes) {
      for (const auto& init : args.inits) {
        ExperimentConfig cfg = args.base;
        cfg.graph = d.str();
        cfg.process = parse_process(proc);
        cfg.init = parse_init(init);
        cfg.master_seed = cells.word(Stream::TrialSeed, 1, cell++);
        cfg.metric_stride = 0;
        const auto r = run_experiment(cfg, g);
        rows.push_back({proc, cfg.graph, init, r.n, r.m, r.summary});
        capped += r.summary.capped;
        log << proc << " " << cfg.graph << " " << init << ": mean " << r.summary.mean << "\n";
      }
    }
  }
  nlohmann::json config = to_json(args.base);
  config.erase("graph");
  config.erase("process");
  config.erase("init");
  config["grid"] = {{"graphs", grid}, {"processes", args.processes}, {"inits", args.inits}};
  config["cell_seed_scheme"] =
      "philox4x32-10(master_seed): word(stream=TrialSeed, round=1, vertex=cell)";
  write_file(args.out_path, sweep_csv(rows, config));
  if (args.strict && capped > 0) return kCappedStrict;
  return kOk;
}

int cmd_good(const GoodArgs& args, std::ostream& log) {
  const Graph g = GraphDescriptor::parse(args.graph).build();
  const CheckMode mode = args.exact ? CheckMode::Exact() : CheckMode::Sampled(args.samples, args.seed);
  const auto rep = is_good(g, args.p, mode);
  auto doc = to_json(rep);
  doc["config"] = {{"graph", GraphDescriptor::parse(args.graph).str()},
                   {"p", args.p},
                   {"mode", args.exact ? "exact" : "sampled"},
                   {"samples", args.samples},
                   {"seed", args.seed}};
  write_file(args.out_path, json_text(doc));
  for (const auto& p : rep.properties) {
    log << p.name << ": " << to_string(p.status) << (p.note.empty() ? "" : " (" + p.note + ")")
        << "\n";
  }
  if (!rep.good()) return kPropertyFail;
  if (args.require_exact && rep.inconclusive()) return kInconclusive;
  return kOk;
}

int cmd_switch_audit(const AuditArgs& args, std::ostream& log) {
  const auto d = GraphDescriptor::parse(args.graph);
  const Graph g = d.build();
  const std::uint64_t rounds = args.rounds.value_or(g.num_vertices());
  bool diam_le_2 = args.diam == "yes";
  if (args.diam == "auto") {
    const auto diam = diameter(g);
    diam_le_2 = diam && *diam <= 2;
  }
  const auto init = switch_init(g.num_vertices(), args.init, args.seed, args.params.zeta);
  const auto history = switch_history(g, init, CoinStream(args.seed), rounds);
  AuditOptions opts;
  opts.a = args.params.a;
  opts.b = args.b;
  opts.diam_le_2 = diam_le_2;
  opts.n = g.num_vertices();
  const auto audit = run_length_audit(history, opts);
  auto doc = to_json(audit, opts);
  doc["config"] = {{"graph", d.str()},
                   {"zeta", args.params.zeta},
                   {"a", args.params.a},
                   {"a_zeta_consistent", args.params.consistent()},
                   {"seed", args.seed},
                   {"switch_init", to_string(args.init)},
                   {"rounds", rounds}};
  write_file(args.out_path, json_text(doc));
  if (!args.params.consistent()) log << "warning: a * zeta != 4\n";
  log << "S1 " << audit.count(SwitchProperty::S1) << ", S2 " << audit.count(SwitchProperty::S2)
      << ", S3 " << audit.count(SwitchProperty::S3) << " violations over " << rounds
      << " rounds\n";
  return audit.passed() ? kOk : kPropertyFail;
}

int cmd_selftest(std::ostream& log) {
  bool ok = true;
  auto report = [&](const std::string& name, bool pass) {
    log << (pass ? "PASS " : "FAIL ") << name << "\n";
    ok = ok && pass;
  };
  ExperimentConfig k1;
  k1.graph = "complete:n=1";
  k1.trials = 20000;
  k1.master_seed = 1;
  const auto r1 = run_experiment(k1);
  report("K_1 all-white mean 2 +- 0.05", std::abs(r1.summary.mean - 2.0) < 0.05);

  ExperimentConfig k2 = k1;
  k2.graph = "complete:n=2";
  const auto r2 = run_experiment(k2);
  report("K_2 all-white mean 2 +- 0.05", std::abs(r2.summary.mean - 2.0) < 0.05);

  ExperimentConfig tree;
  tree.graph = "tree:n=200,seed=3";
  tree.init = InitPolicy::UniformRandom;
  tree.trials = 50;
  tree.master_seed = 2;
  report("random tree trials all stabilize", run_experiment(tree).summary.capped == 0);

  const auto l6 = lemma6_check(1, 20000, 3);
  report("star k=1 estimate 0.25 +- 3 SE", std::abs(l6.estimate - 0.25) <= 3 * l6.se);

  const auto rep = is_good(gen_complete(8), 1.0, CheckMode::Exact());
  report("K_8 is (8,1)-good", rep.good());
  return ok ? kOk : kPropertyFail;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  std::optional<Command> cmd;
  try {
    cmd = parse_args(argv, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (!cmd) return kOk;
  try {
    switch (cmd->kind) {
      case CommandKind::Run: return cmd_run(cmd->run, out);
      case CommandKind::Sweep: return cmd_sweep(cmd->sweep, out);
      case CommandKind::Good: return cmd_good(cmd->good, out);
      case CommandKind::SwitchAudit: return cmd_switch_audit(cmd->audit, out);
      case CommandKind::Selftest: return cmd_selftest(out);
    }
  } catch (const SoundnessError& e) {
    err << "soundness error: " << e.what() << "\n";
    return kSoundness;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace misproc::cli
