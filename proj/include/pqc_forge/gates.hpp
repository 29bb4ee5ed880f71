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
 * @file gates.hpp
 * @brief Gate catalog and the {CX, ID, RZ, SX, X} basis decomposition table.
 *
 * Conventions:
 * - Rotations are RP(theta) = exp(-i theta P / 2) = cos(theta/2) I - i sin(theta/2) P.
 * - R3(phi, theta, omega) = RZ(omega) * RY(theta) * RZ(phi) (RZ(phi) acts first).
 * - In multi-qubit embeddings qubit 0 is the most significant bit of the
 *   basis-state index, i.e. |q0 q1 ... q_{n-1}>.
 */

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pqc_forge/matrix.hpp"

namespace pqc {

enum class GateTag {
  X,
  Y,
  Z,
  H,
  S,
  T,
  Id,
  SX,
  Sdg,
  SXdg,
  Tdg,
  RX,
  RY,
  RZ,
  R3,
  CNOT,
};

/// The fixed non-parametric alphabet searched by the greedy approximation,
/// in catalog order (this order breaks distance ties).
inline constexpr std::array<GateTag, 11> kAlphabet = {
    GateTag::X,  GateTag::Y,   GateTag::Z,    GateTag::H,
    GateTag::S,  GateTag::T,   GateTag::Id,   GateTag::SX,
    GateTag::Sdg, GateTag::SXdg, GateTag::Tdg,
};

/// A gate type plus its angles in radians. Angles are stored as given.
struct GateKind {
  GateTag tag = GateTag::Id;
  std::array<double, 3> angles{};

  static constexpr GateKind fixed(GateTag t) { return GateKind{t, {}}; }
  static constexpr GateKind rx(double theta) { return {GateTag::RX, {theta, 0, 0}}; }
  static constexpr GateKind ry(double theta) { return {GateTag::RY, {theta, 0, 0}}; }
  static constexpr GateKind rz(double theta) { return {GateTag::RZ, {theta, 0, 0}}; }
  static constexpr GateKind r3(double phi, double theta, double omega) {
    return {GateTag::R3, {phi, theta, omega}};
  }
  static constexpr GateKind cnot() { return fixed(GateTag::CNOT); }

  [[nodiscard]] std::size_t arity() const noexcept;
  [[nodiscard]] std::size_t angle_count() const noexcept;
  /// RX, RY, RZ or R3.
  [[nodiscard]] bool is_parametric() const noexcept;

  /// Equality compares only the angles the tag uses.
  friend bool operator==(const GateKind& a, const GateKind& b) noexcept;
};

[[nodiscard]] std::string_view mnemonic(GateTag tag) noexcept;
[[nodiscard]] std::optional<GateTag> tag_from_mnemonic(std::string_view m) noexcept;

/// Position of `tag` in kAlphabet, or nullopt for parametric/two-qubit tags.
[[nodiscard]] std::optional<std::size_t> alphabet_index(GateTag tag) noexcept;

/// 2x2 unitary of a single-qubit gate. Throws StructuralError for CNOT.
[[nodiscard]] UnitaryMatrix unitary(const GateKind& g);

/// 4x4 CNOT with control as the more significant qubit.
[[nodiscard]] UnitaryMatrix cnot_matrix();

/// Upper bound on qubits for dense embedding.
inline constexpr std::size_t kMaxDenseQubits = 12;

/// 2^n x 2^n unitary acting as `g` on `qubits` and identity elsewhere.
/// For CNOT, qubits = {control, target}.
[[nodiscard]] UnitaryMatrix embed(const GateKind& g,
                                  std::span<const std::size_t> qubits,
                                  std::size_t n_qubits);

/// Splits R3(phi, theta, omega) into its circuit-order factors
/// [RZ(phi), RY(theta), RZ(omega)].
[[nodiscard]] std::array<GateKind, 3> split_r3(const GateKind& g);

enum class BasisTag { CX, ID, RZ, SX, X };

struct BasisGate {
  BasisTag tag = BasisTag::ID;
  double angle = 0.0;  // RZ only

  friend bool operator==(const BasisGate&, const BasisGate&) = default;
};

/// Basis gates in circuit (time) order.
using BasisDecomposition = std::vector<BasisGate>;

[[nodiscard]] std::string_view mnemonic(BasisTag tag) noexcept;

/// Table-driven decomposition into {CX, ID, RZ, SX, X}, exact up to global
/// phase. Id decomposes to nothing; RX/RY/R3/Y and any other generic
/// single-qubit gate take the 5-gate RZ-SX-RZ-SX-RZ form.
[[nodiscard]] BasisDecomposition decompose_to_basis(const GateKind& g);

/// Generic 5-gate RZ-SX-RZ-SX-RZ form for an arbitrary 2x2 unitary.
[[nodiscard]] BasisDecomposition euler_basis_form(const UnitaryMatrix& u);

/// ZYZ angles with u = e^{i phase} RZ(phi) RY(theta) RZ(lambda).
struct ZyzAngles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double phase = 0.0;
};

[[nodiscard]] ZyzAngles zyz_angles(const UnitaryMatrix& u);

/// Product of a single-qubit basis sequence (CX rejected).
[[nodiscard]] UnitaryMatrix basis_unitary(const BasisDecomposition& seq);

/// Wraps an angle into (-pi, pi].
[[nodiscard]] double wrap_angle(double a) noexcept;

}  // namespace pqc
