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

#include "pqc_forge/gates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pqc_forge/error.hpp"

namespace pqc {
namespace {

using std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;
const cplx kI{0.0, 1.0};

UnitaryMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  return UnitaryMatrix::from_entries(2, {a, b, c, d});
}

UnitaryMatrix rotation(GateTag tag, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  switch (tag) {
    case GateTag::RX:
      return mat2(c, -kI * s, -kI * s, c);
    case GateTag::RY:
      return mat2(c, -s, s, c);
    case GateTag::RZ:
      return mat2(std::polar(1.0, -theta / 2.0), 0.0, 0.0,
                  std::polar(1.0, theta / 2.0));
    default:
      throw StructuralError("rotation: not a rotation tag");
  }
}

BasisGate rz(double a) { return {BasisTag::RZ, wrap_angle(a)}; }
constexpr BasisGate kSX{BasisTag::SX, 0.0};
constexpr BasisGate kX{BasisTag::X, 0.0};

}  // namespace

std::size_t GateKind::arity() const noexcept {
  return tag == GateTag::CNOT ? 2 : 1;
}

std::size_t GateKind::angle_count() const noexcept {
  switch (tag) {
    case GateTag::RX:
    case GateTag::RY:
    case GateTag::RZ:
      return 1;
    case GateTag::R3:
      return 3;
    default:
      return 0;
  }
}

bool GateKind::is_parametric() const noexcept { return angle_count() > 0; }

bool operator==(const GateKind& a, const GateKind& b) noexcept {
  if (a.tag != b.tag) return false;
  for (std::size_t i = 0; i < a.angle_count(); ++i) {
    if (a.angles[i] != b.angles[i]) return false;
  }
  return true;
}

std::string_view mnemonic(GateTag tag) noexcept {
  switch (tag) {
    case GateTag::X: return "x";
    case GateTag::Y: return "y";
    case GateTag::Z: return "z";
    case GateTag::H: return "h";
    case GateTag::S: return "s";
    case GateTag::T: return "t";
    case GateTag::Id: return "id";
    case GateTag::SX: return "sx";
    case GateTag::Sdg: return "sdg";
    case GateTag::SXdg: return "sxdg";
    case GateTag::Tdg: return "tdg";
    case GateTag::RX: return "rx";
    case GateTag::RY: return "ry";
    case GateTag::RZ: return "rz";
    case GateTag::R3: return "r";
    case GateTag::CNOT: return "cnot";
  }
  return "?";
}

std::optional<GateTag> tag_from_mnemonic(std::string_view m) noexcept {
  static constexpr std::array<GateTag, 16> kAll = {
      GateTag::X,  GateTag::Y,   GateTag::Z,   GateTag::H,
      GateTag::S,  GateTag::T,   GateTag::Id,  GateTag::SX,
      GateTag::Sdg, GateTag::SXdg, GateTag::Tdg, GateTag::RX,
      GateTag::RY, GateTag::RZ,  GateTag::R3,  GateTag::CNOT};
  for (GateTag t : kAll) {
    if (mnemonic(t) == m) return t;
  }
  return std::nullopt;
}

std::optional<std::size_t> alphabet_index(GateTag tag) noexcept {
  for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
    if (kAlphabet[i] == tag) return i;
  }
  return std::nullopt;
}

UnitaryMatrix unitary(const GateKind& g) {
  const cplx h = kInvSqrt2;
  const cplx p{0.5, 0.5};   // (1 + i) / 2
  const cplx m{0.5, -0.5};  // (1 - i) / 2
  switch (g.tag) {
    case GateTag::X: return mat2(0.0, 1.0, 1.0, 0.0);
    case GateTag::Y: return mat2(0.0, -kI, kI, 0.0);
    case GateTag::Z: return mat2(1.0, 0.0, 0.0, -1.0);
    case GateTag::H: return mat2(h, h, h, -h);
    case GateTag::S: return mat2(1.0, 0.0, 0.0, kI);
    case GateTag::T: return mat2(1.0, 0.0, 0.0, std::polar(1.0, pi / 4.0));
    case GateTag::Id: return UnitaryMatrix::identity(2);
    case GateTag::SX: return mat2(p, m, m, p);
    case GateTag::Sdg: return mat2(1.0, 0.0, 0.0, -kI);
    case GateTag::SXdg: return mat2(m, p, p, m);
    case GateTag::Tdg: return mat2(1.0, 0.0, 0.0, std::polar(1.0, -pi / 4.0));
    case GateTag::RX:
    case GateTag::RY:
    case GateTag::RZ:
      return rotation(g.tag, g.angles[0]);
    case GateTag::R3: {
      const auto f = split_r3(g);
      return multiply(unitary(f[2]), multiply(unitary(f[1]), unitary(f[0])));
    }
    case GateTag::CNOT:
      throw StructuralError("unitary: CNOT is two-qubit; use embed()");
  }
  throw StructuralError("unitary: unknown gate");
}

UnitaryMatrix cnot_matrix() {
  return UnitaryMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                   {0.0, 1.0, 0.0, 0.0},
                                   {0.0, 0.0, 0.0, 1.0},
                                   {0.0, 0.0, 1.0, 0.0}});
}

UnitaryMatrix embed(const GateKind& g, std::span<const std::size_t> qubits,
                    std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxDenseQubits) {
    throw StructuralError("embed: qubit count " + std::to_string(n_qubits) +
                          " outside [1, " + std::to_string(kMaxDenseQubits) +
                          "]");
  }
  if (qubits.size() != g.arity()) {
    throw StructuralError("embed: gate '" + std::string(mnemonic(g.tag)) +
                          "' needs " + std::to_string(g.arity()) + " qubit(s)");
  }
  for (std::size_t q : qubits) {
    if (q >= n_qubits) {
      throw StructuralError("embed: qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
    }
  }
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw StructuralError("embed: CNOT control and target must differ");
  }

  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<cplx> out(dim * dim, cplx{0.0, 0.0});
  auto bit = [n_qubits](std::size_t q) {
    return std::size_t{1} << (n_qubits - 1 - q);
  };

  if (g.tag == GateTag::CNOT) {
    const std::size_t cbit = bit(qubits[0]);
    const std::size_t tbit = bit(qubits[1]);
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t row = (col & cbit) ? (col ^ tbit) : col;
      out[row * dim + col] = 1.0;
    }
  } else {
    const UnitaryMatrix u = unitary(g);
    const std::size_t b = bit(qubits[0]);
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t cb = (col & b) ? 1 : 0;
      const std::size_t base = col & ~b;
      for (std::size_t rb = 0; rb < 2; ++rb) {
        const std::size_t row = base | (rb ? b : 0);
        out[row * dim + col] = u(rb, cb);
      }
    }
  }
  return UnitaryMatrix::from_entries_unchecked(dim, std::move(out));
}

std::array<GateKind, 3> split_r3(const GateKind& g) {
  if (g.tag != GateTag::R3) throw StructuralError("split_r3: not an R3 gate");
  return {GateKind::rz(g.angles[0]), GateKind::ry(g.angles[1]),
          GateKind::rz(g.angles[2])};
}

std::string_view mnemonic(BasisTag tag) noexcept {
  switch (tag) {
    case BasisTag::CX: return "cx";
    case BasisTag::ID: return "id";
    case BasisTag::RZ: return "rz";
    case BasisTag::SX: return "sx";
    case BasisTag::X: return "x";
  }
  return "?";
}

double wrap_angle(double a) noexcept {
  double w = std::remainder(a, 2.0 * pi);  // [-pi, pi]
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

ZyzAngles zyz_angles(const UnitaryMatrix& u) {
  if (u.dim() != 2) throw StructuralError("zyz_angles: expected a 2x2 matrix");
  constexpr double kEps = 1e-10;
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(1, 0));
  ZyzAngles z;
  z.theta = 2.0 * std::atan2(s, c);
  if (s < kEps) {
    z.phi = std::arg(u(1, 1)) - std::arg(u(0, 0));
    z.phase = std::arg(u(0, 0)) + z.phi / 2.0;
  } else if (c < kEps) {
    z.phi = std::arg(u(1, 0)) - std::arg(-u(0, 1));
    z.phase = std::arg(u(1, 0)) - z.phi / 2.0;
  } else {
    z.phi = std::arg(u(1, 0)) - std::arg(u(0, 0));
    z.lambda = std::arg(u(1, 1)) - std::arg(u(1, 0));
    z.phase = std::arg(u(0, 0)) + (z.phi + z.lambda) / 2.0;
  }
  return z;
}

BasisDecomposition euler_basis_form(const UnitaryMatrix& u) {
  // RZ(phi) RY(theta) RZ(lambda) == RZ(phi + pi) SX RZ(theta + pi) SX RZ(lambda)
  // up to global phase; listed here in time order.
  const ZyzAngles z = zyz_angles(u);
  return {rz(z.lambda), kSX, rz(z.theta + pi), kSX, rz(z.phi + pi)};
}

BasisDecomposition decompose_to_basis(const GateKind& g) {
  switch (g.tag) {
    case GateTag::CNOT: return {{BasisTag::CX, 0.0}};
    case GateTag::Id: return {};
    case GateTag::X: return {kX};
    case GateTag::SX: return {kSX};
    case GateTag::RZ: return {rz(g.angles[0])};
    case GateTag::Z: return {rz(pi)};
    case GateTag::S: return {rz(pi / 2.0)};
    case GateTag::Sdg: return {rz(-pi / 2.0)};
    case GateTag::T: return {rz(pi / 4.0)};
    case GateTag::Tdg: return {rz(-pi / 4.0)};
    case GateTag::SXdg: return {rz(pi), kSX, rz(pi)};
    case GateTag::H: return {rz(pi / 2.0), kSX, rz(pi / 2.0)};
    case GateTag::Y:
    case GateTag::RX:
    case GateTag::RY:
    case GateTag::R3:
      return euler_basis_form(unitary(g));
  }
  return {};
}

UnitaryMatrix basis_unitary(const BasisDecomposition& seq) {
  UnitaryMatrix acc = UnitaryMatrix::identity(2);
  for (const BasisGate& b : seq) {
    GateKind g;
    switch (b.tag) {
      case BasisTag::CX:
        throw StructuralError("basis_unitary: CX in a single-qubit sequence");
      case BasisTag::ID: g = GateKind::fixed(GateTag::Id); break;
      case BasisTag::RZ: g = GateKind::rz(b.angle); break;
      case BasisTag::SX: g = GateKind::fixed(GateTag::SX); break;
      case BasisTag::X: g = GateKind::fixed(GateTag::X); break;
    }
    acc = multiply(unitary(g), acc);
  }
  return acc;
}

}  // namespace pqc
