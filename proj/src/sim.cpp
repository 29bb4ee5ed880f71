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

#include "pqc_forge/sim.hpp"

#include <bit>
#include <string>
#include <utility>

#include "pqc_forge/error.hpp"

namespace pqc {

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxSimQubits) {
    throw StructuralError("statevector: qubit count " + std::to_string(n_qubits) +
                          " outside [1, " + std::to_string(kMaxSimQubits) + "]");
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
  const std::size_t len = amplitudes.size();
  if (len < 2 || !std::has_single_bit(len)) {
    throw StructuralError("statevector: length must be a power of two >= 2");
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(len));
  if (n > kMaxSimQubits) throw StructuralError("statevector: too many qubits");
  return {n, std::move(amplitudes)};
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.amps_.size()) {
    throw StructuralError("statevector: basis index out of range");
  }
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const noexcept {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return acc;
}

void StateVector::check_qubit(std::size_t q) const {
  if (q >= n_qubits_) {
    throw StructuralError("qubit index " + std::to_string(q) +
                          " out of range for " + std::to_string(n_qubits_) +
                          " qubits");
  }
}

void StateVector::apply_single(const UnitaryMatrix& u, std::size_t q) {
  check_qubit(q);
  if (u.dim() != 2) throw StructuralError("apply_single: expected 2x2 matrix");
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  const std::size_t m = mask(q);
  const std::size_t len = amps_.size();
  // Visit each (i0, i1 = i0 | m) pair once: blocks of 2m, lower half.
  for (std::size_t block = 0; block < len; block += 2 * m) {
    for (std::size_t i0 = block; i0 < block + m; ++i0) {
      const std::size_t i1 = i0 | m;
      const cplx a0 = amps_[i0];
      const cplx a1 = amps_[i1];
      amps_[i0] = u00 * a0 + u01 * a1;
      amps_[i1] = u10 * a0 + u11 * a1;
    }
  }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw StructuralError("cnot: control equals target");
  const std::size_t cm = mask(control);
  const std::size_t tm = mask(target);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
  }
}

void StateVector::apply(const Operation& op) {
  if (op.gate.tag == GateTag::CNOT) {
    apply_cnot(op.qubit_slots[0], op.qubit_slots[1]);
  } else if (op.gate.tag != GateTag::Id) {
    apply_single(unitary(op.gate), op.qubit());
  }
}

void run_in_place(const Circuit& c, StateVector& state) {
  if (c.n_qubits() != state.n_qubits()) {
    throw StructuralError("run: circuit has " + std::to_string(c.n_qubits()) +
                          " qubits, state has " +
                          std::to_string(state.n_qubits()));
  }
  for (const auto& op : c.ops()) state.apply(op);
}

StateVector run(const Circuit& c, const StateVector& initial) {
  StateVector out = initial;
  run_in_place(c, out);
  return out;
}

double expect_z(const StateVector& s, std::size_t q) {
  if (q >= s.n_qubits()) {
    throw StructuralError("expect_z: qubit index " + std::to_string(q) +
                          " out of range");
  }
  const std::size_t m = std::size_t{1} << (s.n_qubits() - 1 - q);
  double acc = 0.0;
  const auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    acc += (i & m) ? -p : p;
  }
  return acc;
}

}  // namespace pqc
