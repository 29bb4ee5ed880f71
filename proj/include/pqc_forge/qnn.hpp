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

/**
 * @file qnn.hpp
 * @brief Quantum classifier: angle encoding, layered ansatz, <Z> readout,
 *        parameter-shift gradients and Adam training.
 *
 * A sample x is encoded as RX(x_{i mod F}) on qubit (i mod n) for
 * i = 0 .. max(n, F) - 1, so every qubit receives a feature and every
 * feature is loaded. Class scores are <Z> on qubits 0 .. C-1 and class
 * probabilities are their softmax; the loss is the mean cross-entropy.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/dataset.hpp"

namespace pqc {

enum class LayerKind { BasicEntangler, StronglyEntangling };

[[nodiscard]] std::string_view to_string(LayerKind k) noexcept;
[[nodiscard]] LayerKind parse_layer_kind(std::string_view name);

struct LayerSpec {
  LayerKind kind = LayerKind::BasicEntangler;
  std::size_t layers = 5;
  std::size_t n_qubits = 8;
};

/// CNOT target offset used by layer `layer` of a strongly entangling ansatz:
/// (layer mod (n - 1)) + 1.
[[nodiscard]] std::size_t entangler_range(LayerKind kind, std::size_t layer,
                                          std::size_t n_qubits) noexcept;

/// Rotation per qubit then a CNOT ring CNOT(i, (i + r) mod n) per layer.
/// Angles are drawn uniformly from (-pi, pi) using `seed`.
[[nodiscard]] Circuit build_ansatz(const LayerSpec& spec, std::uint64_t seed);

struct Model {
  std::size_t n_features = 0;
  std::size_t n_classes = 0;
  Circuit ansatz{1};

  [[nodiscard]] std::size_t n_qubits() const noexcept {
    return ansatz.n_qubits();
  }
  /// Encoding circuit for one sample (all gates frozen).
  [[nodiscard]] Circuit encode(std::span<const double> x) const;
};

/// Throws StructuralError when the dataset has more classes than qubits.
[[nodiscard]] Model build_model(const LayerSpec& spec, const Dataset& data,
                                std::uint64_t seed);

struct Prediction {
  std::vector<double> logits;
  std::vector<double> probabilities;
  [[nodiscard]] std::size_t argmax() const;
};

[[nodiscard]] Prediction forward(const Model& m, std::span<const double> x);

/// Mean softmax cross-entropy over the given samples.
[[nodiscard]] double loss(const Model& m, const Dataset& d,
                          std::span<const std::size_t> samples);

[[nodiscard]] double accuracy(const Model& m, const Dataset& d,
                              std::span<const std::size_t> samples);

/// d(mean loss)/d(trainable angles) via the parameter-shift rule. Angles are
/// ordered as Circuit::trainable_angles(). `jobs` workers split the samples;
/// the reduction order is fixed, so results do not depend on `jobs`.
[[nodiscard]] std::vector<double> gradient(const Model& m, const Dataset& d,
                                           std::span<const std::size_t> batch,
                                           std::size_t jobs = 1);

struct TrainConfig {
  std::size_t epochs = 50;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t batch_size = 16;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double test_accuracy = 0.0;
};

struct TrainHistory {
  std::size_t batch_size = 0;
  double initial_test_accuracy = 0.0;
  std::vector<EpochRecord> epochs;
  std::vector<std::string> warnings;
};

struct TrainResult {
  Model model;
  TrainHistory history;
};

/// Mini-batch Adam over the training split; only trainable angles move.
[[nodiscard]] TrainResult train(Model m, const Dataset& d, const TrainConfig& cfg);

/// Same loop as train(). A model without trainable angles is returned
/// unchanged with a warning in the history.
[[nodiscard]] TrainResult retrain(Model m, const Dataset& d, const TrainConfig& cfg);

}  // namespace pqc
