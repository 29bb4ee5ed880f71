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

// File formats: optimize reports and sweep tables (JSON/CSV), and model
// files (circuit text plus a `<model>.json` sidecar).

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/dataset.hpp"
#include "pqc_forge/optimizer.hpp"
#include "pqc_forge/qnn.hpp"

namespace pqc {

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

[[nodiscard]] Circuit load_circuit(const std::filesystem::path& path);
/// Writes serialize(c) plus a trailing newline.
void save_circuit(const std::filesystem::path& path, const Circuit& c);

/// {depth, gates, params, logical_depth, logical_gates}
[[nodiscard]] nlohmann::json to_json(const CircuitMetrics& m);

/// {tolerance, seed, metric, mode, transform_calls, before, after,
///  global_distance, ledger: [...]}
[[nodiscard]] nlohmann::json to_json(const OptimizeReport& r);

[[nodiscard]] nlohmann::json to_json(const std::vector<SweepRow>& rows);

/// Header `tolerance,depth,gates,params,replaced,accuracy`; accuracy is
/// empty when not evaluated.
[[nodiscard]] std::string sweep_csv(const std::vector<SweepRow>& rows);

[[nodiscard]] nlohmann::json to_json(const TrainHistory& h);
[[nodiscard]] std::string history_csv(const TrainHistory& h);

/// Provenance kept beside a model's circuit file.
struct ModelInfo {
  DatasetName dataset = DatasetName::Iris;
  std::uint64_t data_seed = 0;
  LayerKind layer_kind = LayerKind::BasicEntangler;
  std::size_t layers = 0;
  std::uint64_t init_seed = 0;
  std::vector<double> norm_min;
  std::vector<double> norm_max;
  /// Free-form history of steps applied to the model (train, optimize, ...).
  nlohmann::json lineage = nlohmann::json::array();
};

struct StoredModel {
  Model model;
  ModelInfo info;
};

[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& model);

[[nodiscard]] nlohmann::json model_sidecar(const Model& m, const ModelInfo& info);

/// Writes the circuit to `path` and the sidecar to sidecar_path(path).
void save_model(const std::filesystem::path& path, const StoredModel& sm);

/// Reads both files. Throws DataError when the sidecar is missing or
/// inconsistent with the circuit.
[[nodiscard]] StoredModel load_model(const std::filesystem::path& path);

}  // namespace pqc
