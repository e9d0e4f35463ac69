#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cubemix/canonical_index.hpp"
#include "cubemix/cube_model.hpp"
#include "cubemix/distribution_engine.hpp"
#include "cubemix/pair_graph.hpp"
#include "cubemix/unlink_time.hpp"
#include "cubemix/verify.hpp"

namespace py = pybind11;
using namespace cubemix;

namespace {

Face face_arg(int f) {
  if (f < 0 || f >= kNumFaces) throw py::value_error("face must be in 0..5 (B,D,F,L,R,U)");
  return Face(f);
}

Move move_arg(int face, int quarters) {
  if (quarters < 1 || quarters > 3) throw py::value_error("quarters must be 1, 2 or 3");
  return Move{face_arg(face), quarters};
}

UnlinkModel model_arg(const std::string& name) {
  if (name == "corners") return UnlinkModel::corners;
  if (name == "rubiks-all") return UnlinkModel::rubiks_all;
  throw py::value_error("model must be 'corners' or 'rubiks-all'");
}

EdgeSemantics semantics_arg(const std::string& name) {
  if (name == "chain") return EdgeSemantics::chain;
  if (name == "paper") return EdgeSemantics::paper_set;
  throw py::value_error("semantics must be 'chain' or 'paper'");
}

SolveMethod method_arg(const std::string& name) {
  if (name == "exact") return SolveMethod::exact;
  if (name == "iterate") return SolveMethod::iterate;
  throw py::value_error("method must be 'exact' or 'iterate'");
}

py::dict order_result_dict(const OrderResult& r) {
  py::dict d;
  d["z"] = r.z;
  d["p_before"] = r.p;
  d["deviation"] = r.deviation;
  d["ci_low"] = r.ci_low;
  d["ci_high"] = r.ci_high;
  d["converged"] = r.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cubemix, m) {
  m.doc() = "Scrambling chain analysis for the Pocket cube and Rubik's cube";

  m.attr("NUM_STATES") = kCanonicalStateCount;
  m.attr("FACES") = py::make_tuple("B", "D", "F", "L", "R", "U");
  m.attr("CORNER_SLOTS") =
      py::make_tuple("DFR", "FRU", "BRU", "BDR", "FLU", "DFL", "BLU", "BDL");

  py::class_<PocketState>(m, "PocketState")
      .def_static("solved", &PocketState::solved)
      .def_property_readonly("cubie",
                             [](const PocketState& s) {
                               return std::vector<int>(s.cubie.begin(), s.cubie.end());
                             })
      .def_property_readonly("ori",
                             [](const PocketState& s) {
                               return std::vector<int>(s.ori.begin(), s.ori.end());
                             })
      .def("apply",
           [](const PocketState& s, int face, int quarters) {
             return apply_move(s, move_arg(face, quarters));
           },
           py::arg("face"), py::arg("quarters") = 1)
      .def("__eq__", [](const PocketState& a, const PocketState& b) { return a == b; })
      .def("__repr__", [](const PocketState& s) {
        std::ostringstream out;
        out << "PocketState(cubie=[";
        for (int i = 0; i < 8; ++i) out << (i ? "," : "") << int(s.cubie[i]);
        out << "], ori=[";
        for (int i = 0; i < 8; ++i) out << (i ? "," : "") << int(s.ori[i]);
        out << "])";
        return out.str();
      });

  py::class_<RubiksPositions>(m, "RubiksPositions")
      .def_static("solved", &RubiksPositions::solved)
      .def_property_readonly("corner",
                             [](const RubiksPositions& s) {
                               return std::vector<int>(s.corner.begin(), s.corner.end());
                             })
      .def_property_readonly("edge",
                             [](const RubiksPositions& s) {
                               return std::vector<int>(s.edge.begin(), s.edge.end());
                             })
      .def("apply", [](const RubiksPositions& s, int face, int quarters) {
        return apply_move_positions(s, move_arg(face, quarters));
      }, py::arg("face"), py::arg("quarters") = 1);

  m.def("corner_image",
        [](int face, int slot) {
          if (slot < 0 || slot >= 8) throw py::value_error("slot must be in 0..7");
          return corner_image(face_arg(face), slot);
        },
        py::arg("face"), py::arg("slot"));
  m.def("edge_image",
        [](int face, int slot) {
          if (slot < 0 || slot >= 12) throw py::value_error("slot must be in 0..11");
          return edge_image(face_arg(face), slot);
        },
        py::arg("face"), py::arg("slot"));
  m.def("face_members",
        [](int face, const std::string& model) {
          std::vector<int> out;
          for (int s = 0; s < 8; ++s)
            if (corner_on_face(face_arg(face), s)) out.push_back(s);
          if (model == "full") {
            for (int e = 0; e < 12; ++e)
              if (edge_on_face(face_arg(face), e)) out.push_back(8 + e);
          } else if (model != "corners-only") {
            throw py::value_error("model must be 'corners-only' or 'full'");
          }
          return out;
        },
        py::arg("face"), py::arg("model") = "corners-only");

  m.def("canonicalize", [](const PocketState& s) {
    const auto c = canonicalize(s);
    return py::make_tuple(c.state, c.rotation);
  });
  m.def("rank", &rank, py::arg("state"));
  m.def("unrank", &unrank, py::arg("index"));
  m.def("enumerate_reachable", []() {
    const ReachabilityReport r = enumerate_reachable();
    return py::make_tuple(r.count, r.depth_histogram);
  });

  py::class_<MoveTables>(m, "MoveTables")
      .def_static("build", [](int jobs) { return MoveTables::build(jobs); }, py::arg("jobs") = 1)
      .def_static(
          "load_or_build",
          [](const std::string& path, int jobs) { return MoveTables::load_or_build(path, jobs); },
          py::arg("cache_file"), py::arg("jobs") = 1)
      .def_property_readonly("size", &MoveTables::size)
      .def("apply", &MoveTables::apply, py::arg("move"), py::arg("index"));

  m.def("mixing_trace",
        [](const MoveTables& tables, double threshold, int jobs) {
          const MixingReport r = mixing_time(tables, threshold, jobs);
          return py::make_tuple(r.tau, r.tv);
        },
        py::arg("tables"), py::arg("threshold") = 0.25, py::arg("jobs") = 1);

  m.def("simulate_T",
        [](const std::string& model, std::uint64_t seed) {
          return simulate_T(model_arg(model), seed);
        },
        py::arg("model"), py::arg("seed"));
  m.def("unlink_trials",
        [](const std::string& model, std::uint64_t trials, std::uint64_t seed, int jobs) {
          const TrialHistogram h = run_trials(model_arg(model), trials, seed, jobs);
          py::dict d;
          d["mean_T"] = h.mean();
          d["stderr_T"] = h.stderr_mean();
          d["histogram"] = h.count;
          d["trials"] = h.trials;
          return d;
        },
        py::arg("model"), py::arg("trials"), py::arg("seed") = 1, py::arg("jobs") = 1);
  m.def("survival_curve",
        [](const std::string& model, std::uint64_t trials, std::uint64_t seed, int t_max,
           int jobs) {
          const SurvivalCurve c = survival_curve(model_arg(model), trials, seed, t_max, jobs);
          return py::make_tuple(c.p_greater, c.se);
        },
        py::arg("model"), py::arg("trials"), py::arg("seed") = 1, py::arg("t_max") = 100,
        py::arg("jobs") = 1);
  m.def("heuristic_mixing_bound",
        [](const std::string& model, std::uint64_t trials, std::uint64_t seed, double threshold,
           int t_max, int jobs) {
          const SurvivalCurve c = survival_curve(model_arg(model), trials, seed, t_max, jobs);
          return heuristic_mixing_bound(c, threshold);
        },
        py::arg("model"), py::arg("trials"), py::arg("seed") = 1, py::arg("threshold") = 0.25,
        py::arg("t_max") = 200, py::arg("jobs") = 1);

  m.def("pair_order_probability",
        [](int a0, int b0, const std::string& semantics, const std::string& method,
           double epsilon) {
          const PairGraph g = PairGraph::build(a0, b0, semantics_arg(semantics));
          py::dict d = order_result_dict(order_probability(g, method_arg(method), epsilon));
          d["vertices"] = g.vertex_count();
          d["sinks"] = int(g.sinks().size());
          return d;
        },
        py::arg("a0"), py::arg("b0"), py::arg("semantics") = "chain", py::arg("method") = "exact",
        py::arg("epsilon") = 1e-9);
  m.def("pair_scan",
        [](const std::string& semantics, const std::string& method, double epsilon) {
          const PairScan scan = scan_all_pairs(semantics_arg(semantics), method_arg(method), epsilon);
          py::list rows;
          for (const auto& row : scan.rows) {
            py::dict d = order_result_dict(row.result);
            d["a0"] = row.a0;
            d["b0"] = row.b0;
            rows.append(d);
          }
          py::dict out;
          out["max_deviation"] = scan.max_deviation;
          out["rows"] = rows;
          return out;
        },
        py::arg("semantics") = "chain", py::arg("method") = "exact", py::arg("epsilon") = 1e-9);
  m.def("pair_order_mc",
        [](int a0, int b0, std::uint64_t trials, std::uint64_t seed) {
          const OrderCheck c = monte_carlo_order_check(a0, b0, trials, seed);
          py::dict d;
          d["p_before"] = c.p_hat;
          d["stderr"] = c.se;
          d["mean_steps"] = c.mean_steps;
          d["stderr_steps"] = c.se_steps;
          d["trials"] = c.trials;
          return d;
        },
        py::arg("a0"), py::arg("b0"), py::arg("trials") = 100000, py::arg("seed") = 1);

  m.def("model_invariant_checks", []() {
    py::list out;
    for (const CheckResult& c : model_invariant_checks())
      out.append(py::make_tuple(c.name, c.pass, c.detail));
    return out;
  });
}
