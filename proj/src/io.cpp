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

#include "pqc_forge/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "pqc_forge/error.hpp"

namespace pqc {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Circuit load_circuit(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_circuit(text);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " +
                                   std::string(e.what()).substr(
                                       std::string(e.what()).find(": ") + 2));
  }
}

void save_circuit(const std::filesystem::path& path, const Circuit& c) {
  write_text_file(path, serialize(c) + "\n");
}

json to_json(const CircuitMetrics& m) {
  return {{"depth", m.decomposed_depth},
          {"gates", m.decomposed_gate_count},
          {"params", m.remaining_parameters},
          {"logical_depth", m.logical_depth},
          {"logical_gates", m.logical_gate_count}};
}

namespace {

json gate_json(const GateKind& g) {
  json j{{"gate", std::string(mnemonic(g.tag))}};
  if (g.angle_count() > 0) {
    j["angles"] = std::vector<double>(g.angles.begin(),
                                      g.angles.begin() + static_cast<std::ptrdiff_t>(g.angle_count()));
  }
  return j;
}

}  // namespace

json to_json(const OptimizeReport& r) {
  json ledger = json::array();
  for (const auto& e : r.ledger) {
    json orig = json::array();
    for (const auto& g : e.original) orig.push_back(gate_json(g));
    json repl = json::array();
    for (GateTag t : e.replacement) repl.push_back(std::string(mnemonic(t)));
    json entry{{"ops", e.source_ops},
               {"qubit", e.qubit},
               {"original", orig},
               {"replaced", e.replaced},
               {"distance", e.distance},
               {"replacement", repl},
               {"original_cost", e.original_cost},
               {"replacement_cost", e.replacement_cost},
               {"stream", e.stream}};
    entry["factor"] = e.factor ? json(*e.factor) : json(nullptr);
    ledger.push_back(std::move(entry));
  }
  json j{{"tolerance", r.tolerance},
         {"seed", r.seed},
         {"metric", std::string(to_string(r.metric))},
         {"mode", std::string(to_string(r.mode))},
         {"no_growth", r.no_growth},
         {"transform_calls", r.transform_calls},
         {"replaced", r.replaced_count()},
         {"before", to_json(r.before)},
         {"after", to_json(r.after)},
         {"ledger", ledger}};
  j["global_distance"] = r.global_distance ? json(*r.global_distance) : json(nullptr);
  return j;
}

json to_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j = to_json(row.metrics);
    j["tolerance"] = row.tolerance;
    j["replaced"] = row.replaced;
    j["accuracy"] = row.accuracy ? json(*row.accuracy) : json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "tolerance,depth,gates,params,replaced,accuracy\n";
  for (const auto& r : rows) {
    os << r.tolerance << ',' << r.metrics.decomposed_depth << ','
       << r.metrics.decomposed_gate_count << ',' << r.metrics.remaining_parameters
       << ',' << r.replaced << ',';
    if (r.accuracy) os << *r.accuracy;
    os << '\n';
  }
  return os.str();
}

json to_json(const TrainHistory& h) {
  json epochs = json::array();
  for (const auto& e : h.epochs) {
    epochs.push_back({{"epoch", e.epoch},
                      {"train_loss", e.train_loss},
                      {"test_accuracy", e.test_accuracy}});
  }
  return {{"batch_size", h.batch_size},
          {"initial_test_accuracy", h.initial_test_accuracy},
          {"epochs", epochs},
          {"warnings", h.warnings}};
}

std::string history_csv(const TrainHistory& h) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "epoch,train_loss,test_accuracy\n";
  for (const auto& e : h.epochs) {
    os << e.epoch << ',' << e.train_loss << ',' << e.test_accuracy << '\n';
  }
  return os.str();
}

std::filesystem::path sidecar_path(const std::filesystem::path& model) {
  std::filesystem::path p = model;
  p += ".json";
  return p;
}

json model_sidecar(const Model& m, const ModelInfo& info) {
  std::vector<std::size_t> readout(m.n_classes);
  for (std::size_t c = 0; c < m.n_classes; ++c) readout[c] = c;
  return {{"format", "pqc-forge-model/1"},
          {"n_qubits", m.n_qubits()},
          {"n_features", m.n_features},
          {"n_classes", m.n_classes},
          {"readout_qubits", readout},
          {"encoding", "cyclic-rx"},
          {"dataset", std::string(to_string(info.dataset))},
          {"data_seed", info.data_seed},
          {"layer_kind", std::string(to_string(info.layer_kind))},
          {"layers", info.layers},
          {"init_seed", info.init_seed},
          {"norm_min", info.norm_min},
          {"norm_max", info.norm_max},
          {"lineage", info.lineage}};
}

void save_model(const std::filesystem::path& path, const StoredModel& sm) {
  save_circuit(path, sm.model.ansatz);
  write_text_file(sidecar_path(path), model_sidecar(sm.model, sm.info).dump(2) + "\n");
}

StoredModel load_model(const std::filesystem::path& path) {
  StoredModel sm;
  sm.model.ansatz = load_circuit(path);
  const auto side = sidecar_path(path);
  json j;
  try {
    j = json::parse(read_text_file(side));
    sm.model.n_features = j.at("n_features").get<std::size_t>();
    sm.model.n_classes = j.at("n_classes").get<std::size_t>();
    sm.info.dataset = parse_dataset_name(j.at("dataset").get<std::string>());
    sm.info.data_seed = j.at("data_seed").get<std::uint64_t>();
    sm.info.layer_kind = parse_layer_kind(j.at("layer_kind").get<std::string>());
    sm.info.layers = j.at("layers").get<std::size_t>();
    sm.info.init_seed = j.at("init_seed").get<std::uint64_t>();
    sm.info.norm_min = j.at("norm_min").get<std::vector<double>>();
    sm.info.norm_max = j.at("norm_max").get<std::vector<double>>();
    sm.info.lineage = j.value("lineage", json::array());
    if (j.at("n_qubits").get<std::size_t>() != sm.model.n_qubits()) {
      throw DataError("qubit count differs from the circuit file");
    }
  } catch (const json::exception& e) {
    throw DataError("bad model sidecar '" + side.string() + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError("bad model sidecar '" + side.string() + "': " + e.what());
  }
  if (sm.model.n_classes > sm.model.n_qubits()) {
    throw DataError("model sidecar '" + side.string() + "' has more classes than qubits");
  }
  return sm;
}

}  // namespace pqc
