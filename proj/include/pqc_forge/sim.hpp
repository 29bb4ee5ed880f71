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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/matrix.hpp"

namespace pqc {

inline constexpr std::size_t kMaxSimQubits = 12;

/// Dense statevector. Index bit (n-1-q) holds qubit q, matching embed().
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits);
  /// Takes amplitudes as given (length must be 2^n); no normalization.
  static StateVector from_amplitudes(std::vector<cplx> amplitudes);
  /// Computational basis state |index>.
  static StateVector basis(std::size_t n_qubits, std::size_t index);

  [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] std::span<const cplx> amplitudes() const noexcept {
    return amps_;
  }
  [[nodiscard]] double norm_squared() const noexcept;

  void apply_single(const UnitaryMatrix& u, std::size_t q);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply(const Operation& op);

 private:
  StateVector(std::size_t n, std::vector<cplx> amps)
      : n_qubits_(n), amps_(std::move(amps)) {}

  [[nodiscard]] std::size_t mask(std::size_t q) const noexcept {
    return std::size_t{1} << (n_qubits_ - 1 - q);
  }
  void check_qubit(std::size_t q) const;

  std::size_t n_qubits_;
  std::vector<cplx> amps_;
};

/// Applies every op of `c` to a copy of `initial`.
[[nodiscard]] StateVector run(const Circuit& c, const StateVector& initial);

/// Applies every op of `c` in place.
void run_in_place(const Circuit& c, StateVector& state);

/// <Z_q>, in [-1, 1].
[[nodiscard]] double expect_z(const StateVector& s, std::size_t q);

}  // namespace pqc
