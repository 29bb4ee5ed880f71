// Copyright 2026 The pqc-forge Authors.
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
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/dataset.hpp"
#include "pqc_forge/error.hpp"
#include "pqc_forge/gates.hpp"
#include "pqc_forge/greedy.hpp"
#include "pqc_forge/io.hpp"
#include "pqc_forge/optimizer.hpp"
#include "pqc_forge/qnn.hpp"
#include "pqc_forge/sim.hpp"

namespace py = pybind11;
using namespace pqc;

namespace {

py::object to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

GateKind make_gate(const std::string& name, const std::vector<double>& angles) {
  const auto tag = tag_from_mnemonic(name == "r3" ? "r" : name);
  if (!tag) throw std::invalid_argument("unknown gate '" + name + "'");
  GateKind g = GateKind::fixed(*tag);
  if (angles.size() != g.angle_count()) {
    throw std::invalid_argument("gate '" + name + "' takes " + std::to_string(g.angle_count()) +
                                " angle(s)");
  }
  for (std::size_t i = 0; i < angles.size(); ++i) g.angles[i] = angles[i];
  return g;
}

GreedyParams greedy_params(std::size_t iters, std::size_t top_k, const std::string& metric,
                           std::uint64_t seed) {
  GreedyParams p;
  p.iterations = iters;
  p.top_k = top_k;
  p.metric = parse_distance_metric(metric);
  p.seed = seed;
  p.validate();
  return p;
}

std::vector<std::string> names(const std::vector<GateTag>& seq) {
  std::vector<std::string> out;
  for (GateTag t : seq) out.emplace_back(mnemonic(t));
  return out;
}

OptimizeConfig optimize_config(double tolerance, const std::string& mode, std::uint64_t seed,
                               std::size_t restarts, std::size_t jobs, std::size_t iters,
                               std::size_t top_k, const std::string& metric,
                               bool allow_growth) {
  OptimizeConfig cfg;
  cfg.tolerance = tolerance;
  cfg.mode = parse_optimize_mode(mode);
  cfg.greedy = greedy_params(iters, top_k, metric, seed);
  cfg.restarts = restarts;
  cfg.jobs = jobs;
  cfg.no_growth = !allow_growth;
  return cfg;
}

const std::vector<std::size_t>& split(const Dataset& d, const std::string& which) {
  if (which == "train") return d.train;
  if (which == "test") return d.test;
  throw std::invalid_argument("split must be 'train' or 'test'");
}

TrainConfig train_config(std::size_t epochs, double lr, std::uint64_t seed,
                         std::size_t batch_size, std::size_t jobs) {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.learning_rate = lr;
  cfg.seed = seed;
  cfg.batch_size = batch_size;
  cfg.jobs = jobs;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "pqc-forge native core";
  m.attr("__version__") = PQC_FORGE_VERSION;

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_OSError);

  py::class_<Circuit>(m, "Circuit")
      .def(py::init<std::size_t>(), py::arg("n_qubits"))
      .def_static("parse", [](const std::string& text) { return parse_circuit(text); })
      .def_static("load", [](const std::string& path) { return load_circuit(path); })
      .def("save", [](const Circuit& c, const std::string& path) { save_circuit(path, c); })
      .def(
          "add",
          [](Circuit& c, const std::string& gate, std::size_t qubit,
             const std::vector<double>& angles, std::optional<bool> trainable) -> Circuit& {
            const GateKind g = make_gate(gate, angles);
            return c.add(g, qubit, trainable.value_or(g.is_parametric()));
          },
          py::arg("gate"), py::arg("qubit"), py::arg("angles") = std::vector<double>{},
          py::arg("trainable") = py::none(), py::return_value_policy::reference_internal)
      .def("add_cnot", &Circuit::add_cnot, py::arg("control"), py::arg("target"),
           py::return_value_policy::reference_internal)
      .def_property_readonly("n_qubits", &Circuit::n_qubits)
      .def("__len__", &Circuit::size)
      .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; })
      .def("__str__", [](const Circuit& c) { return serialize(c); })
      .def("serialize", [](const Circuit& c) { return serialize(c); })
      .def("ops",
           [](const Circuit& c) {
             py::list out;
             for (const auto& op : c.ops()) {
               py::dict d;
               d["gate"] = std::string(mnemonic(op.gate.tag));
               d["qubits"] = std::vector<std::size_t>(op.qubits().begin(), op.qubits().end());
               d["angles"] = std::vector<double>(op.gate.angles.begin(),
                                                 op.gate.angles.begin() +
                                                     static_cast<long>(op.gate.angle_count()));
               d["trainable"] = op.trainable;
               out.append(d);
             }
             return out;
           })
      .def_property("trainable_angles", &Circuit::trainable_angles,
                    [](Circuit& c, const std::vector<double>& a) { c.set_trainable_angles(a); })
      .def("metrics", [](const Circuit& c) { return to_py(to_json(metrics(c))); });

  m.def(
      "build_ansatz",
      [](const std::string& kind, std::size_t layers, std::size_t qubits, std::uint64_t seed) {
        return build_ansatz({parse_layer_kind(kind), layers, qubits}, seed);
      },
      py::arg("kind") = "bel", py::arg("layers") = 5, py::arg("qubits") = 8,
      py::arg("seed") = 0);

  m.def(
      "approx_gate",
      [](const std::string& gate, const std::vector<double>& angles, std::size_t iters,
         std::size_t top_k, const std::string& metric, std::uint64_t seed,
         std::size_t restarts) {
        const auto p = greedy_params(iters, top_k, metric, seed);
        const auto r = param_gate_transform_restarts(unitary(make_gate(gate, angles)), p, restarts);
        py::dict d;
        d["sequence"] = names(r.sequence);
        d["distance"] = r.final_dist;
        d["basis_cost"] = basis_cost(r.sequence);
        return d;
      },
      py::arg("gate"), py::arg("angles") = std::vector<double>{}, py::arg("iters") = 20,
      py::arg("top_k") = 4, py::arg("metric") = "phase-invariant", py::arg("seed") = 0,
      py::arg("restarts") = 1);

  m.def(
      "exhaustive_oracle",
      [](const std::string& gate, const std::vector<double>& angles, std::size_t max_len,
         const std::string& metric) {
        const auto r =
            exhaustive_oracle(unitary(make_gate(gate, angles)), max_len, parse_distance_metric(metric));
        py::dict d;
        d["sequence"] = names(r.sequence);
        d["distance"] = r.distance;
        return d;
      },
      py::arg("gate"), py::arg("angles") = std::vector<double>{}, py::arg("max_len") = 4,
      py::arg("metric") = "phase-invariant");

  m.def(
      "optimize",
      [](const Circuit& c, double tolerance, const std::string& mode, std::uint64_t seed,
         std::size_t restarts, std::size_t jobs, std::size_t iters, std::size_t top_k,
         const std::string& metric, bool allow_growth) {
        const auto cfg = optimize_config(tolerance, mode, seed, restarts, jobs, iters, top_k,
                                         metric, allow_growth);
        std::pair<Circuit, OptimizeReport> r{Circuit(1), {}};
        {
          py::gil_scoped_release nogil;
          r = optimize(c, cfg);
        }
        return py::make_tuple(r.first, to_py(to_json(r.second)));
      },
      py::arg("circuit"), py::arg("tolerance") = 0.05, py::arg("mode") = "per-gate",
      py::arg("seed") = 0, py::arg("restarts") = 1, py::arg("jobs") = 1, py::arg("iters") = 20,
      py::arg("top_k") = 4, py::arg("metric") = "phase-invariant",
      py::arg("allow_growth") = false);

  m.def(
      "sweep",
      [](const Circuit& c, const std::vector<double>& tolerances, const std::string& mode,
         std::uint64_t seed, std::size_t restarts, std::size_t jobs, bool allow_growth) {
        const auto cfg = optimize_config(0.05, mode, seed, restarts, jobs, 20, 4,
                                         "phase-invariant", allow_growth);
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release nogil;
          rows = sweep(c, tolerances, cfg);
        }
        return to_py(to_json(rows));
      },
      py::arg("circuit"), py::arg("tolerances"), py::arg("mode") = "per-gate",
      py::arg("seed") = 0, py::arg("restarts") = 1, py::arg("jobs") = 1,
      py::arg("allow_growth") = false);

  m.def(
      "simulate",
      [](const Circuit& c) {
        const StateVector s = run(c, StateVector(c.n_qubits()));
        return std::vector<cplx>(s.amplitudes().begin(), s.amplitudes().end());
      },
      py::arg("circuit"), "Final amplitudes from |0...0>; qubit 0 is the most significant bit.");

  m.def(
      "expect_z",
      [](const Circuit& c, std::size_t q) {
        return expect_z(run(c, StateVector(c.n_qubits())), q);
      },
      py::arg("circuit"), py::arg("qubit"));

  py::class_<Dataset>(m, "Dataset")
      .def_static(
          "load",
          [](const std::string& name, const std::string& path, std::uint64_t seed) {
            return load_dataset(parse_dataset_name(name), path, seed);
          },
          py::arg("name"), py::arg("path"), py::arg("seed") = 0)
      .def_property_readonly("n_features", &Dataset::n_features)
      .def_property_readonly("n_classes", &Dataset::n_classes)
      .def_readonly("features", &Dataset::features)
      .def_readonly("labels", &Dataset::labels)
      .def_readonly("train", &Dataset::train)
      .def_readonly("test", &Dataset::test);

  py::class_<Model>(m, "Model")
      .def_readonly("n_features", &Model::n_features)
      .def_readonly("n_classes", &Model::n_classes)
      .def_readwrite("ansatz", &Model::ansatz)
      .def("predict", [](const Model& mdl, const std::vector<double>& x) {
        return forward(mdl, x).probabilities;
      });

  m.def(
      "build_model",
      [](const Dataset& d, const std::string& kind, std::size_t layers, std::size_t qubits,
         std::uint64_t seed) {
        return build_model({parse_layer_kind(kind), layers, qubits}, d, seed);
      },
      py::arg("dataset"), py::arg("kind") = "bel", py::arg("layers") = 5, py::arg("qubits") = 8,
      py::arg("seed") = 0);

  auto fit = [](bool again) {
    return [again](const Model& mdl, const Dataset& d, std::size_t epochs, double lr,
                   std::uint64_t seed, std::size_t batch_size, std::size_t jobs) {
      const auto cfg = train_config(epochs, lr, seed, batch_size, jobs);
      TrainResult r;
      {
        py::gil_scoped_release nogil;
        r = again ? retrain(mdl, d, cfg) : train(mdl, d, cfg);
      }
      return py::make_tuple(r.model, to_py(to_json(r.history)));
    };
  };
  m.def("train", fit(false), py::arg("model"), py::arg("dataset"), py::arg("epochs") = 50,
        py::arg("lr") = 1e-3, py::arg("seed") = 0, py::arg("batch_size") = 16,
        py::arg("jobs") = 1);
  m.def("retrain", fit(true), py::arg("model"), py::arg("dataset"), py::arg("epochs") = 20,
        py::arg("lr") = 1e-3, py::arg("seed") = 0, py::arg("batch_size") = 16,
        py::arg("jobs") = 1);

  m.def(
      "accuracy",
      [](const Model& mdl, const Dataset& d, const std::string& which) {
        return accuracy(mdl, d, split(d, which));
      },
      py::arg("model"), py::arg("dataset"), py::arg("split") = "test");
}
