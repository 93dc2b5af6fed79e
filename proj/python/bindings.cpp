#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "misproc/descriptor.hpp"
#include "misproc/goodness.hpp"
#include "misproc/harness.hpp"
#include "misproc/log_switch.hpp"
#include "misproc/report.hpp"

namespace py = pybind11;
using namespace misproc;
using nlohmann::json;

namespace {

// Fills unspecified fields of a partial config from the defaults.
ExperimentConfig config_from_partial(const std::string& text) {
  json j = to_json(ExperimentConfig{});
  j.merge_patch(json::parse(text));
  auto cfg = config_from_json(j);
  if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_misproc, m) {
  m.doc() = "Randomized MIS processes";

  py::register_exception<SoundnessError>(m, "SoundnessError");

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges",
                  [](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
                    return Graph::from_edges(n, edges);
                  })
      .def_static("from_descriptor",
                  [](const std::string& d) { return GraphDescriptor::parse(d).build(); })
      .def_static("from_edge_list", [](const std::string& text) { return load_edge_list(text); })
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def("degree", &Graph::degree)
      .def("neighbors",
           [](const Graph& g, Vertex u) {
             const auto s = g.neighbors(u);
             return std::vector<Vertex>(s.begin(), s.end());
           })
      .def("edges", &Graph::edges)
      .def("to_edge_list", [](const Graph& g) { return to_edge_list(g); })
      .def(py::self == py::self);

  m.def("canonical_descriptor", [](const std::string& d) { return GraphDescriptor::parse(d).str(); });

  m.def(
      "verify_mis",
      [](const Graph& g, const std::vector<Vertex>& black) {
        VertexSet s(g.num_vertices());
        for (Vertex v : black) s.insert(v);
        return verify_mis(g, s);
      },
      py::arg("graph"), py::arg("black"));

  m.def("trial_seed", &trial_seed, py::arg("master_seed"), py::arg("trial"));

  m.def(
      "_run_experiment",
      [](const std::string& cfg_json) {
        const auto cfg = config_from_partial(cfg_json);
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(cfg);
        }
        json out = summary_document(r);
        json times = json::array();
        for (const auto& t : r.trials) {
          times.push_back(t.stabilization_round ? json(*t.stabilization_round) : json(nullptr));
        }
        out["stabilization_rounds"] = times;
        out["trials_csv"] = trials_csv(r);
        return out.dump();
      },
      py::arg("config_json"));

  m.def(
      "_is_good",
      [](const Graph& g, double p, bool exact, std::size_t samples, std::uint64_t seed) {
        const auto mode = exact ? CheckMode::Exact() : CheckMode::Sampled(samples, seed);
        return to_json(is_good(g, p, mode)).dump();
      },
      py::arg("graph"), py::arg("p"), py::arg("exact"), py::arg("samples"), py::arg("seed"));

  m.def(
      "_switch_audit",
      [](const Graph& g, std::uint64_t seed, std::uint64_t rounds, double a, double zeta,
         bool diam_le_2) {
        const auto init = switch_init(g.num_vertices(), SwitchInit::UniformRandom, seed, zeta);
        const auto hist = switch_history(g, init, CoinStream(seed), rounds);
        AuditOptions opts;
        opts.a = a;
        opts.diam_le_2 = diam_le_2;
        opts.n = g.num_vertices();
        return to_json(run_length_audit(hist, opts), opts).dump();
      },
      py::arg("graph"), py::arg("seed"), py::arg("rounds"), py::arg("a"), py::arg("zeta"),
      py::arg("diam_le_2"));

  py::class_<ProbabilityCheck>(m, "ProbabilityCheck")
      .def_readonly("trials", &ProbabilityCheck::trials)
      .def_readonly("hits", &ProbabilityCheck::hits)
      .def_readonly("rounds", &ProbabilityCheck::rounds)
      .def_readonly("estimate", &ProbabilityCheck::estimate)
      .def_readonly("se", &ProbabilityCheck::se)
      .def_readonly("bound", &ProbabilityCheck::bound)
      .def("passes", &ProbabilityCheck::passes);

  m.def("lemma6_check", &lemma6_check, py::arg("k"), py::arg("trials"), py::arg("seed"));
  m.def("lemma7_check", &lemma7_check, py::arg("ks"), py::arg("trials"), py::arg("seed"));
}
