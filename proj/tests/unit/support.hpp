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

// Test-only oracles. Nothing here calls into the library's matrix code, so
// it can be used to check it.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/gates.hpp"

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Row-major dense square matrix.
struct Dense {
  std::size_t n = 0;
  std::vector<cplx> a;

  explicit Dense(std::size_t dim = 0) : n(dim), a(dim * dim) {}
  cplx& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  static Dense eye(std::size_t dim) {
    Dense d(dim);
    for (std::size_t i = 0; i < dim; ++i) d(i, i) = 1.0;
    return d;
  }
  static Dense m2(cplx a00, cplx a01, cplx a10, cplx a11) {
    Dense d(2);
    d.a = {a00, a01, a10, a11};
    return d;
  }
};

inline Dense mul(const Dense& x, const Dense& y) {
  Dense z(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) z(i, j) += x(i, k) * y(k, j);
  return z;
}

inline Dense kron(const Dense& x, const Dense& y) {
  Dense z(x.n * y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      for (std::size_t k = 0; k < y.n; ++k)
        for (std::size_t l = 0; l < y.n; ++l) z(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
  return z;
}

// Textbook matrices, written out by hand.
inline Dense textbook(const pqc::GateKind& g) {
  using pqc::GateTag;
  const double r = 1.0 / std::sqrt(2.0);
  const double t0 = g.angles[0];
  const double c = std::cos(t0 / 2), s = std::sin(t0 / 2);
  switch (g.tag) {
    case GateTag::X: return Dense::m2(0, 1, 1, 0);
    case GateTag::Y: return Dense::m2(0, -kI, kI, 0);
    case GateTag::Z: return Dense::m2(1, 0, 0, -1);
    case GateTag::H: return Dense::m2(r, r, r, -r);
    case GateTag::S: return Dense::m2(1, 0, 0, kI);
    case GateTag::Sdg: return Dense::m2(1, 0, 0, -kI);
    case GateTag::T: return Dense::m2(1, 0, 0, std::exp(kI * (kPi / 4)));
    case GateTag::Tdg: return Dense::m2(1, 0, 0, std::exp(-kI * (kPi / 4)));
    case GateTag::Id: return Dense::eye(2);
    case GateTag::SX: return Dense::m2(cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5));
    case GateTag::SXdg: return Dense::m2(cplx(0.5, -0.5), cplx(0.5, 0.5), cplx(0.5, 0.5), cplx(0.5, -0.5));
    case GateTag::RX: return Dense::m2(c, -kI * s, -kI * s, c);
    case GateTag::RY: return Dense::m2(c, -s, s, c);
    case GateTag::RZ: return Dense::m2(std::exp(-kI * (t0 / 2)), 0, 0, std::exp(kI * (t0 / 2)));
    case GateTag::R3: {
      const Dense rz_phi = textbook(pqc::GateKind::rz(g.angles[0]));
      const Dense ry = textbook(pqc::GateKind::ry(g.angles[1]));
      const Dense rz_om = textbook(pqc::GateKind::rz(g.angles[2]));
      return mul(rz_om, mul(ry, rz_phi));
    }
    case GateTag::CNOT: {
      Dense d(4);
      d(0, 0) = d(1, 1) = d(2, 3) = d(3, 2) = 1.0;
      return d;
    }
  }
  return Dense::eye(2);
}

// Full-register matrix of one op, qubit 0 most significant, built by
// permuting basis states (independent of kron ordering tricks).
inline Dense op_matrix(const pqc::Operation& op, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  Dense out(dim);
  const Dense g = textbook(op.gate);
  const auto qs = op.qubits();
  auto bit = [&](std::size_t idx, std::size_t q) { return (idx >> (n - 1 - q)) & 1U; };
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t row = 0; row < dim; ++row) {
      bool others_equal = true;
      for (std::size_t q = 0; q < n; ++q) {
        bool acted = false;
        for (std::size_t aq : qs) acted = acted || aq == q;
        if (!acted && bit(row, q) != bit(col, q)) others_equal = false;
      }
      if (!others_equal) continue;
      std::size_t r = 0, c = 0;
      for (std::size_t aq : qs) {
        r = (r << 1) | bit(row, aq);
        c = (c << 1) | bit(col, aq);
      }
      out(row, col) = g(r, c);
    }
  }
  return out;
}

inline Dense circuit_matrix(const pqc::Circuit& c) {
  Dense u = Dense::eye(std::size_t{1} << c.n_qubits());
  for (const auto& op : c.ops()) u = mul(op_matrix(op, c.n_qubits()), u);
  return u;
}

inline double max_diff(const Dense& x, const std::vector<cplx>& y) {
  double m = 0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y[i]));
  return m;
}

// 1 - |Tr(V^dagger U)| / dim, computed from scratch.
inline double phase_invariant_distance(const Dense& u, const Dense& v) {
  cplx tr = 0;
  for (std::size_t i = 0; i < u.n; ++i)
    for (std::size_t k = 0; k < u.n; ++k) tr += std::conj(v(k, i)) * u(k, i);
  return 1.0 - std::abs(tr) / static_cast<double>(u.n);
}

inline pqc::GateKind random_single(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 14);
  std::uniform_real_distribution<double> ang(-2 * kPi, 2 * kPi);
  const int k = pick(rng);
  if (k < 11) return pqc::GateKind::fixed(pqc::kAlphabet[static_cast<std::size_t>(k)]);
  if (k == 11) return pqc::GateKind::rx(ang(rng));
  if (k == 12) return pqc::GateKind::ry(ang(rng));
  if (k == 13) return pqc::GateKind::rz(ang(rng));
  return pqc::GateKind::r3(ang(rng), ang(rng), ang(rng));
}

// Mixed random circuit; rotations are trainable with probability 3/4.
inline pqc::Circuit random_circuit(std::size_t n, std::size_t n_ops, std::mt19937_64& rng) {
  pqc::Circuit c(n);
  std::uniform_int_distribution<std::size_t> q(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  for (std::size_t i = 0; i < n_ops; ++i) {
    if (n > 1 && coin(rng) == 0) {
      const std::size_t a = q(rng);
      std::size_t b = q(rng);
      while (b == a) b = q(rng);
      c.add_cnot(a, b);
    } else {
      const pqc::GateKind g = random_single(rng);
      c.add(g, q(rng), g.is_parametric() && coin(rng) != 0);
    }
  }
  return c;
}

}  // namespace oracle
