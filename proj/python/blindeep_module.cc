// Copyright 2026 The blindeep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Vertices and cells are 0-indexed here, matching the C++ API.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "blindeep/error.h"
#include "blindeep/filters.h"
#include "blindeep/graph.h"
#include "blindeep/io.h"
#include "blindeep/metrics.h"
#include "blindeep/pipeline.h"
#include "blindeep/signals.h"
#include "blindeep/solvers.h"

namespace py = pybind11;
using namespace blindeep;

namespace {

GraphFilter make_filter(const std::string& kind, double sigma, double alpha,
                        std::vector<double> coeffs) {
  if (kind == "heat") return GraphFilter::heat(sigma);
  if (kind == "iir") return GraphFilter::iir(alpha);
  if (kind == "poly") return GraphFilter::polynomial(std::move(coeffs));
  throw InvalidArgument("unknown filter kind: " + kind);
}

SolverConfig make_solver(const std::string& name, std::uint64_t seed, std::optional<int> restarts,
                         std::optional<int> max_iter, std::optional<double> tol,
                         std::optional<std::vector<double>> rho_schedule) {
  SolverConfig cfg;
  cfg.kind = parse_solver_kind(name);
  cfg.seed = seed;
  cfg.restarts = restarts;
  cfg.max_iter = max_iter;
  cfg.tol = tol;
  cfg.rho_schedule = std::move(rho_schedule);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_blindeep, m) {
  m.doc() = "Blind extraction of external equitable partitions from graph signals";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<Edge>>(), py::arg("n"), py::arg("edges"))
      .def_static("from_adjacency", &Graph::from_adjacency)
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("edges", &Graph::edges)
      .def("max_degree", &Graph::max_degree)
      .def("laplacian", [](const Graph& g) { return laplacian(g); });

  py::class_<Partition>(m, "Partition")
      .def(py::init<std::vector<std::vector<int>>, int>(), py::arg("cells"), py::arg("n"))
      .def_static("from_labels",
                  [](const std::vector<int>& labels, int r) { return Partition::from_labels(labels, r); })
      .def_property_readonly("n", &Partition::n)
      .def_property_readonly("r", &Partition::r)
      .def_property_readonly("cells", &Partition::cells)
      .def_property_readonly("labels", &Partition::labels)
      .def("sizes", &Partition::sizes)
      .def("__eq__", &Partition::operator==)
      .def("same_up_to_labels", &same_up_to_labels);

  py::class_<QuotientGraph>(m, "QuotientGraph")
      .def_readonly("adjacency", &QuotientGraph::adjacency)
      .def_readonly("laplacian", &QuotientGraph::laplacian)
      .def_readonly("cell_sizes", &QuotientGraph::cell_sizes);

  py::class_<PlantedInstance>(m, "PlantedInstance")
      .def_readonly("graph", &PlantedInstance::graph)
      .def_readonly("truth", &PlantedInstance::truth)
      .def_readonly("quotient", &PlantedInstance::quotient);

  m.def(
      "generate",
      [](std::vector<int> sizes, const Eigen::MatrixXi& b, std::vector<double> p_intra,
         std::uint64_t seed) {
        PlantedSpec spec{std::move(sizes), b, std::move(p_intra)};
        if (spec.p_intra.size() == 1 && spec.sizes.size() > 1)
          spec.p_intra.assign(spec.sizes.size(), spec.p_intra.front());
        return generate_planted_eep(spec, seed);
      },
      py::arg("sizes"), py::arg("b"), py::arg("p_intra"), py::arg("seed") = 0);

  m.def(
      "is_eep", [](const Graph& g, const Partition& p) { return is_eep(g, p).is_eep; },
      py::arg("graph"), py::arg("partition"));
  m.def("quotient", &quotient, py::arg("graph"), py::arg("partition"));
  m.def(
      "verify", [](const Graph& g, const Partition& p) { return format_verify(verify(g, p)); },
      py::arg("graph"), py::arg("partition"));

  py::class_<GraphFilter>(m, "GraphFilter")
      .def(py::init(&make_filter), py::arg("kind"), py::arg("sigma") = 0.0,
           py::arg("alpha") = 0.0, py::arg("coeffs") = std::vector<double>{1.0})
      .def("response", &GraphFilter::response)
      .def("describe", &GraphFilter::describe);

  m.def(
      "filter_matrix",
      [](const GraphFilter& f, const Graph& g) { return build_filter_matrix(f, g).matrix; },
      py::arg("filter"), py::arg("graph"));
  m.def(
      "low_pass_ratio",
      [](const GraphFilter& f, const std::vector<double>& eigs, int r) {
        return low_pass_ratio(f, eigs, r).eta;
      },
      py::arg("filter"), py::arg("laplacian_eigs"), py::arg("r"));

  m.def(
      "sample",
      [](const GraphFilter& f, const Graph& g, int m_samples, double noise_var, std::uint64_t seed) {
        return sample_observations(build_filter_matrix(f, g), m_samples, noise_var, seed,
                                   f.describe())
            .samples;
      },
      py::arg("filter"), py::arg("graph"), py::arg("m"), py::arg("noise_var") = 0.01,
      py::arg("seed") = 0, "n x m matrix of filtered noisy signals, one sample per column");

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("cost_fc", &EvalReport::cost_fc)
      .def_readonly("group_accuracy", &EvalReport::group_accuracy)
      .def_readonly("matched_accuracy", &EvalReport::matched_accuracy);

  py::class_<ExtractionResult>(m, "ExtractionResult")
      .def_readonly("partition", &ExtractionResult::partition)
      .def_readonly("eval", &ExtractionResult::eval)
      .def_readonly("warnings", &ExtractionResult::warnings)
      .def_property_readonly("h_hat", [](const ExtractionResult& r) { return r.h_hat.normalized; })
      .def_property_readonly("objective", [](const ExtractionResult& r) { return r.solver.objective; })
      .def_property_readonly("iterations",
                             [](const ExtractionResult& r) { return r.solver.iterations; })
      .def_property_readonly("converged", [](const ExtractionResult& r) { return r.solver.converged; });

  m.def(
      "be_eeps",
      [](const Eigen::MatrixXd& samples, int r, const std::string& solver, std::uint64_t seed,
         std::optional<int> restarts, std::optional<int> max_iter, std::optional<double> tol,
         std::optional<std::vector<double>> rho_schedule, const Graph* graph,
         const Partition* truth) {
        SignalBatch batch;
        batch.samples = samples;
        const SolverConfig cfg = make_solver(solver, seed, restarts, max_iter, tol, rho_schedule);
        if ((graph == nullptr) != (truth == nullptr))
          throw InvalidArgument("be_eeps: graph and truth must be given together");
        if (graph != nullptr) {
          const GroundTruth gt = GroundTruth::from_instance(*graph, *truth);
          return be_eeps(batch, r, cfg, &gt);
        }
        return be_eeps(batch, r, cfg);
      },
      py::arg("samples"), py::arg("r"), py::arg("solver") = "kmeans", py::arg("seed") = 0,
      py::arg("restarts") = py::none(), py::arg("max_iter") = py::none(),
      py::arg("tol") = py::none(), py::arg("rho_schedule") = py::none(),
      py::arg("graph") = nullptr, py::arg("truth") = nullptr,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "matched_accuracy",
      [](const Partition& found, const Partition& truth) {
        return matched_accuracy(found, truth).fraction;
      },
      py::arg("found"), py::arg("truth"));
  m.def("cost_fc", &cost_fc, py::arg("found"), py::arg("true_vecs"));
  m.def(
      "group_accuracy",
      [](const Partition& a, const Partition& b) { return group_accuracy(a, b); },
      py::arg("found"), py::arg("truth"));
}
