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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/error.hpp"
#include "pqc_forge/qnn.hpp"
#include "support.hpp"

using namespace pqc;

namespace {

// ASAP layering over the expanded basis gates, written independently of the
// library: each wire remembers the layer of its last gate.
std::size_t oracle_decomposed_depth(const Circuit& c) {
  std::vector<std::size_t> wire(c.n_qubits(), 0);
  for (const auto& op : c.ops()) {
    if (op.gate.tag == GateTag::CNOT) {
      const std::size_t a = op.qubits()[0], b = op.qubits()[1];
      const std::size_t d = std::max(wire[a], wire[b]) + 1;
      wire[a] = wire[b] = d;
    } else {
      wire[op.qubit()] += decompose_to_basis(op.gate).size();
    }
  }
  return *std::max_element(wire.begin(), wire.end());
}

}  // namespace

TEST_CASE("construction rejects malformed ops") {
  CHECK_THROWS_AS(Circuit(0), StructuralError);
  Circuit c(2);
  CHECK_THROWS_AS(c.add(GateKind::fixed(GateTag::H), 2), StructuralError);
  CHECK_THROWS_AS(c.add_cnot(1, 1), StructuralError);
  CHECK_THROWS_AS(c.add_cnot(0, 5), StructuralError);
  CHECK_THROWS_AS(c.add(GateKind::fixed(GateTag::H), 0, true), StructuralError);
  CHECK_THROWS_AS(c.add(GateKind::cnot(), 0), StructuralError);
  CHECK(c.empty());
}

TEST_CASE("trainable angle vector") {
  Circuit c(2);
  c.add(GateKind::rx(0.1), 0, true);
  c.add(GateKind::ry(0.2), 1, false);
  c.add(GateKind::r3(0.3, 0.4, 0.5), 1, true);
  c.add_cnot(0, 1);
  CHECK(c.trainable_angle_count() == 4);
  CHECK(c.trainable_angles() == std::vector<double>{0.1, 0.3, 0.4, 0.5});
  const std::vector<double> next{1, 2, 3, 4};
  c.set_trainable_angles(next);
  CHECK(c.trainable_angles() == next);
  CHECK(c.ops()[1].gate.angles[0] == 0.2);
  CHECK_THROWS_AS(c.set_trainable_angles(std::vector<double>{1.0}), StructuralError);
  CHECK(metrics(c).remaining_parameters == 4);
}

TEST_CASE("text format parses comments, frozen marks and R3") {
  const Circuit c = parse_circuit(
      "# header comment\n"
      "qubits 3\n"
      "rx 0 0.25   # trainable\n"
      "rx! 1 0.5\n"
      "r 2 0.1 0.2 0.3\n"
      "\n"
      "cnot 0 2\n"
      "h 1\n");
  REQUIRE(c.size() == 5);
  CHECK(c.n_qubits() == 3);
  CHECK(c.ops()[0].trainable);
  CHECK_FALSE(c.ops()[1].trainable);
  CHECK(c.ops()[2].gate == GateKind::r3(0.1, 0.2, 0.3));
  CHECK(c.ops()[3].qubits()[1] == 2);
  CHECK(c.ops()[4].gate.tag == GateTag::H);
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      (void)parse_circuit(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("rx 0 1\n") == 1);
  CHECK_THROWS_AS((void)parse_circuit(""), ParseError);
  CHECK(line_of("qubits 2\nfoo 0\n") == 2);
  CHECK(line_of("qubits 2\nrx 0\n") == 2);
  CHECK(line_of("qubits 2\n\nrx 0 abc\n") == 3);
  CHECK(line_of("qubits 2\nh! 0\n") == 2);
  CHECK(line_of("qubits 2\ncnot 0 0\n") == 2);
  CHECK(line_of("qubits 2\nh 7\n") == 2);
  CHECK(line_of("qubits 0\n") == 1);
  CHECK(line_of("qubits 2\nrx 0 nan\n") == 2);
}

TEST_CASE("serialize/parse round-trips random circuits bit-exactly") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = oracle::random_circuit(1 + trial % 5, 30, rng);
    const Circuit back = parse_circuit(serialize(c));
    CHECK(back == c);
    CHECK(serialize(back) == serialize(c));
  }
}

TEST_CASE("single CNOT metrics") {
  Circuit c(2);
  c.add_cnot(0, 1);
  const auto m = metrics(c);
  CHECK(m.logical_depth == 1);
  CHECK(m.logical_gate_count == 1);
  CHECK(m.decomposed_gate_count == 1);
  CHECK(m.decomposed_depth == 1);
  CHECK(m.remaining_parameters == 0);
}

TEST_CASE("identity gates count zero") {
  Circuit c(1);
  c.add(GateKind::fixed(GateTag::Id), 0);
  c.add(GateKind::fixed(GateTag::Id), 0);
  CHECK(metrics(c).decomposed_gate_count == 0);
  CHECK(metrics(c).decomposed_depth == 0);
}

TEST_CASE("layered baselines") {
  struct Row {
    LayerKind kind;
    std::size_t qubits, gates, depth;
  };
  for (const Row& r : {Row{LayerKind::BasicEntangler, 8, 240, 65},
                       Row{LayerKind::BasicEntangler, 10, 300, 75},
                       Row{LayerKind::StronglyEntangling, 8, 240, 45},
                       Row{LayerKind::StronglyEntangling, 10, 300, 48}}) {
    const Circuit c = build_ansatz({r.kind, 5, r.qubits}, 0);
    const auto m = metrics(c);
    CAPTURE(r.qubits);
    CHECK(m.decomposed_gate_count == r.gates);
    CHECK(m.decomposed_depth == r.depth);
    CHECK(m.decomposed_depth == oracle_decomposed_depth(c));
  }
}

TEST_CASE("metric properties on random circuits") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = oracle::random_circuit(1 + trial % 6, 40, rng);
    const auto m = metrics(c);
    std::size_t total = 0, params = 0;
    for (const auto& op : c.ops()) {
      total += decompose_to_basis(op.gate).size();
      if (op.trainable) params += op.gate.angle_count();
    }
    CHECK(m.decomposed_gate_count == total);
    CHECK(m.remaining_parameters == params);
    CHECK(m.logical_gate_count == c.size());
    CHECK(m.decomposed_depth == oracle_decomposed_depth(c));
    CHECK(m.logical_depth <= m.logical_gate_count);
    CHECK(m.decomposed_depth <= m.decomposed_gate_count);
  }
}

TEST_CASE("full_unitary matches the dense oracle") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = oracle::random_circuit(1 + trial % 4, 15, rng);
    const auto u = full_unitary(c);
    CHECK(u.unitarity_error() <= 1e-12);
    CHECK(oracle::max_diff(oracle::circuit_matrix(c), u.entries()) < 1e-12);
  }
  CHECK_THROWS_AS((void)full_unitary(Circuit(kMaxFullUnitaryQubits + 1)), StructuralError);
}
