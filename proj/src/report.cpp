#include "misproc/report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "misproc/descriptor.hpp"

namespace misproc {

using nlohmann::json;

namespace {

json vertices_json(const std::vector<Vertex>& v) { return json(v); }

std::string graph_token(const std::string& descriptor) {
  try {
    return GraphDescriptor::parse(descriptor).csv_token();
  } catch (const std::exception&) {
    std::string s = descriptor;
    for (auto& c : s) {
      if (c == ',') c = ';';
    }
    return s;
  }
}

std::string csv_preamble(const char* schema, const json& config) {
  return std::string("# schema: ") + schema + "\n# config: " + config.dump() + "\n";
}

std::string to_string(SwitchProperty p) {
  switch (p) {
    case SwitchProperty::S1: return "S1";
    case SwitchProperty::S2: return "S2";
    case SwitchProperty::S3: return "S3";
  }
  return "?";
}

}  // namespace

json to_json(const ExperimentConfig& cfg) {
  return json{
      {"process", to_string(cfg.process)},
      {"graph", cfg.graph},
      {"init", to_string(cfg.init)},
      {"trials", cfg.trials},
      {"master_seed", cfg.master_seed},
      {"max_rounds", cfg.max_rounds},
      {"metric_stride", cfg.metric_stride},
      {"switch", {{"a", cfg.switch_params.a},
                  {"zeta", cfg.switch_params.zeta},
                  {"init", to_string(cfg.switch_init)}}},
      {"trial_seed_scheme", "philox4x32-10(master_seed): word(stream=TrialSeed, round=0, vertex=trial)"},
  };
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.process = parse_process(j.at("process").get<std::string>());
  cfg.graph = j.at("graph").get<std::string>();
  cfg.init = parse_init(j.at("init").get<std::string>());
  cfg.trials = j.at("trials").get<std::uint64_t>();
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  cfg.max_rounds = j.at("max_rounds").get<std::uint64_t>();
  cfg.metric_stride = j.at("metric_stride").get<std::uint64_t>();
  const auto& sw = j.at("switch");
  cfg.switch_params.a = sw.at("a").get<double>();
  cfg.switch_params.zeta = sw.at("zeta").get<double>();
  cfg.switch_init = parse_switch_init(sw.at("init").get<std::string>());
  return cfg;
}

json to_json(const Summary& s) {
  return json{{"trials", s.trials}, {"completed", s.completed}, {"capped", s.capped},
              {"sum", s.sum},       {"mean", s.mean},           {"stddev", s.stddev},
              {"median", s.median}, {"min", s.min},             {"max", s.max},
              {"q90", s.q90},       {"q99", s.q99}};
}

json to_json(const std::vector<TailRow>& tail) {
  json rows = json::array();
  for (const auto& r : tail) {
    json row{{"k", r.k}, {"count", r.count}, {"prob", r.prob}};
    row["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
    row["ratio_se"] = r.ratio_se ? json(*r.ratio_se) : json(nullptr);
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const TrialResult& t) {
  json metrics = json::array();
  for (const auto& m : t.metrics) {
    metrics.push_back({m.round, m.blacks, m.whites, m.grays, m.actives, m.stable_black,
                       m.nonstable});
  }
  std::string colors;
  for (Color c : t.final_state.colors) colors += static_cast<char>('0' + static_cast<int>(c));
  return json{
      {"process", to_string(t.process)},
      {"graph", t.graph},
      {"init", to_string(t.init)},
      {"seed", t.seed},
      {"stabilization_round",
       t.stabilization_round ? json(*t.stabilization_round) : json("capped")},
      {"rounds_executed", t.rounds_executed},
      {"metrics", std::move(metrics)},
      {"final_colors", std::move(colors)},
  };
}

json to_json(const GoodnessReport& rep) {
  json props = json::array();
  for (const auto& r : rep.properties) {
    json p{{"property", r.name},
           {"status", to_string(r.status)},
           {"evaluated", r.evaluated},
           {"note", r.note}};
    if (r.witness) {
      json w{{"lhs", r.witness->lhs}, {"rhs", r.witness->rhs}};
      if (!r.witness->s.empty()) w["S"] = vertices_json(r.witness->s);
      if (!r.witness->t.empty()) w["T"] = vertices_json(r.witness->t);
      if (!r.witness->i.empty()) w["I"] = vertices_json(r.witness->i);
      if (r.witness->pair) w["pair"] = {r.witness->pair->first, r.witness->pair->second};
      if (std::isinf(r.witness->lhs)) w["lhs"] = "infinite";
      p["witness"] = std::move(w);
    } else {
      p["witness"] = nullptr;
    }
    props.push_back(std::move(p));
  }
  return json{{"schema", kGoodnessSchema},
              {"n", rep.n},
              {"p", rep.p},
              {"mode", rep.exact ? "exact" : "sampled"},
              {"good", rep.good()},
              {"inconclusive", rep.inconclusive()},
              {"properties", std::move(props)}};
}

json to_json(const SwitchAudit& audit, const AuditOptions& opts) {
  json violations = json::array();
  for (const auto& v : audit.violations) {
    violations.push_back({{"property", to_string(v.property)},
                          {"vertex", v.vertex},
                          {"start_round", v.start_round},
                          {"length", v.length},
                          {"truncated", v.truncated},
                          {"past_horizon", v.past_horizon}});
  }
  return json{{"schema", kAuditSchema},
              {"n", audit.n},
              {"rounds", audit.rounds},
              {"a", opts.a},
              {"b", opts.b},
              {"diam_le_2", opts.diam_le_2},
              {"s1_max_off", audit.s1_max_off},
              {"s2_min_off", audit.s2_min_off},
              {"s3_start", opts.s3_start},
              {"counts",
               {{"S1", audit.count(SwitchProperty::S1)},
                {"S2", audit.count(SwitchProperty::S2)},
                {"S3", audit.count(SwitchProperty::S3)},
                {"past_horizon", audit.violations.size() - audit.count(SwitchProperty::S1) -
                                     audit.count(SwitchProperty::S2) -
                                     audit.count(SwitchProperty::S3)}}},
              {"passed", audit.passed()},
              {"violations", std::move(violations)}};
}

json summary_document(const ExperimentResult& r, bool include_timing) {
  json doc{{"schema", kSummarySchema},
           {"config", to_json(r.config)},
           {"graph", {{"descriptor", r.config.graph}, {"n", r.n}, {"m", r.m}}},
           {"summary", to_json(r.summary)},
           {"tail", {{"unit", r.n > 1 ? std::log2(static_cast<double>(r.n)) : 1.0},
                     {"rows", to_json(r.tail)}}}};
  if (include_timing) doc["wall_seconds"] = r.wall_seconds;
  return doc;
}

std::string trials_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << csv_preamble(kTrialsSchema, to_json(r.config));
  out << "trial,seed,process,graph,init,stab_round,capped\n";
  const std::string graph = graph_token(r.config.graph);
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const auto& t = r.trials[i];
    out << i << ',' << t.seed << ',' << to_string(t.process) << ',' << graph << ','
        << to_string(t.init) << ',';
    if (t.stabilization_round) {
      out << *t.stabilization_round << ",0\n";
    } else {
      out << "-1,1\n";
    }
  }
  return out.str();
}

std::string rounds_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << csv_preamble(kRoundsSchema, to_json(r.config));
  out << "trial,round,blacks,whites,grays,actives,stable_black,nonstable\n";
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    for (const auto& m : r.trials[i].metrics) {
      out << i << ',' << m.round << ',' << m.blacks << ',' << m.whites << ',' << m.grays << ','
          << m.actives << ',' << m.stable_black << ',' << m.nonstable << '\n';
    }
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const json& config) {
  std::ostringstream out;
  out << csv_preamble(kSweepSchema, config);
  out << "cell,process,graph,init,n,m,trials,completed,capped,mean,stddev,median,min,max,q90,q99\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& s = r.summary;
    out << i << ',' << r.process << ',' << graph_token(r.graph) << ',' << r.init << ',' << r.n
        << ',' << r.m << ',' << s.trials << ',' << s.completed << ',' << s.capped << ','
        << json(s.mean).dump() << ',' << json(s.stddev).dump() << ',' << json(s.median).dump()
        << ',' << s.min << ',' << s.max << ',' << s.q90 << ',' << s.q99 << '\n';
  }
  return out.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = s.find(',', start);
      fields.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return fields;
  };
  while (std::getline(in, line)) {
    if (line.rfind("# schema: ", 0) == 0) {
      table.schema = line.substr(10);
    } else if (line.rfind("# config: ", 0) == 0) {
      table.config = json::parse(line.substr(10));
    } else if (line.rfind('#', 0) == 0) {
      continue;
    } else if (table.header.empty()) {
      table.header = split(line);
    } else {
      auto fields = split(line);
      if (fields.size() != table.header.size()) {
        throw std::runtime_error("ragged CSV row: " + line);
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (table.schema.empty()) throw std::runtime_error("CSV lacks a schema line");
  if (table.header.empty()) throw std::runtime_error("CSV lacks a header row");
  return table;
}

std::string plot_script(const ExperimentResult& r, const std::string& trials_csv_path) {
  std::ostringstream out;
  const double unit = r.n > 1 ? std::log2(static_cast<double>(r.n)) : 1.0;
  out << "# gnuplot script; run: gnuplot <this file>\n"
      << "set datafile separator ','\n"
      << "set datafile commentschars '#'\n"
      << "set terminal pngcairo size 1200,480\n"
      << "set output '" << trials_csv_path << ".png'\n"
      << "set multiplot layout 1,2 title '" << to_string(r.config.process) << " on "
      << graph_token(r.config.graph) << " (" << r.config.trials << " trials)'\n"
      << "binwidth = 1\n"
      << "bin(x) = binwidth * floor(x / binwidth)\n"
      << "set title 'stabilization round'\n"
      << "set xlabel 'round'\nset ylabel 'trials'\n"
      << "plot '" << trials_csv_path
      << "' every ::1 using (bin($6)):(($7 == 0) ? 1 : 0) smooth freq with boxes notitle\n"
      << "set title 'tail P[T >= k log2 n]'\n"
      << "set xlabel 'k'\nset ylabel 'probability'\nset logscale y\n"
      << "$tail << EOD\n";
  for (const auto& row : r.tail) {
    if (row.count > 0) out << row.k << ',' << json(row.prob).dump() << '\n';
  }
  out << "EOD\n"
      << "plot $tail using 1:2 with linespoints title sprintf('unit = %.3f', " << unit << ")\n"
      << "unset multiplot\n";
  return out.str();
}

}  // namespace misproc
