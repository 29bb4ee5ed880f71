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
 * @file circuit.hpp
 * @brief Circuit IR, its line-based text format, and depth/gate-count metrics.
 *
 * Text format (one op per line, `#` starts a comment):
 * @code
 * qubits 2
 * rx 0 0.25        # trainable rotation
 * rx! 1 0.5        # frozen rotation
 * r 0 0.1 0.2 0.3  # R3(phi, theta, omega)
 * cnot 0 1
 * h 1
 * @endcode
 */

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqc_forge/gates.hpp"
#include "pqc_forge/matrix.hpp"

namespace pqc {

struct Operation {
  GateKind gate;
  std::array<std::size_t, 2> qubit_slots{};
  /// Only meaningful for parametric gates; always false otherwise.
  bool trainable = false;

  [[nodiscard]] std::span<const std::size_t> qubits() const noexcept {
    return {qubit_slots.data(), gate.arity()};
  }
  [[nodiscard]] std::size_t qubit() const noexcept { return qubit_slots[0]; }

  friend bool operator==(const Operation& a, const Operation& b) noexcept {
    return a.gate == b.gate && a.trainable == b.trainable &&
           a.qubit_slots[0] == b.qubit_slots[0] &&
           (a.gate.arity() < 2 || a.qubit_slots[1] == b.qubit_slots[1]);
  }
};

/// Ordered gate list on a fixed register. Every mutation validates.
class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits);

  [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] const std::vector<Operation>& ops() const noexcept {
    return ops_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }
  [[nodiscard]] bool empty() const noexcept { return ops_.empty(); }

  /// Appends a single-qubit gate. Parametric gates default to trainable.
  Circuit& add(const GateKind& g, std::size_t q);
  Circuit& add(const GateKind& g, std::size_t q, bool trainable);
  Circuit& add_cnot(std::size_t control, std::size_t target);
  /// Appends an op after validating it against this register.
  Circuit& push(const Operation& op);

  /// Trainable angles in op order (R3 contributes phi, theta, omega).
  [[nodiscard]] std::vector<double> trainable_angles() const;
  /// Overwrites trainable angles in op order; size must match.
  void set_trainable_angles(std::span<const double> angles);
  [[nodiscard]] std::size_t trainable_angle_count() const noexcept;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void validate(const Operation& op) const;

  std::size_t n_qubits_;
  std::vector<Operation> ops_;
};

[[nodiscard]] Circuit parse_circuit(std::string_view text);

/// Canonical text: `qubits n` then one op per line, no trailing newline,
/// angles with 17 significant digits.
[[nodiscard]] std::string serialize(const Circuit& c);

struct CircuitMetrics {
  std::size_t logical_depth = 0;
  std::size_t logical_gate_count = 0;
  std::size_t decomposed_depth = 0;
  std::size_t decomposed_gate_count = 0;
  std::size_t remaining_parameters = 0;

  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

/// Longest path through the op dependency DAG (ops conflict iff they share
/// a qubit), before and after per-op basis decomposition. Id ops count in
/// the logical metrics and contribute nothing once decomposed.
[[nodiscard]] CircuitMetrics metrics(const Circuit& c);

inline constexpr std::size_t kMaxFullUnitaryQubits = 10;

/// Ordered product of embedded op unitaries (last op leftmost).
[[nodiscard]] UnitaryMatrix full_unitary(const Circuit& c);

}  // namespace pqc
