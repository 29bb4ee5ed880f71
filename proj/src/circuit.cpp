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

#include "pqc_forge/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "pqc_forge/error.hpp"

namespace pqc {

Circuit::Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw StructuralError("circuit needs at least one qubit");
}

void Circuit::validate(const Operation& op) const {
  const auto qs = op.qubits();
  for (std::size_t q : qs) {
    if (q >= n_qubits_) {
      throw StructuralError("qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(n_qubits_) +
                            " qubits");
    }
  }
  if (qs.size() == 2 && qs[0] == qs[1]) {
    throw StructuralError("cnot control and target must differ");
  }
  if (op.trainable && !op.gate.is_parametric()) {
    throw StructuralError("only rotation gates can be trainable");
  }
}

Circuit& Circuit::add(const GateKind& g, std::size_t q) {
  return add(g, q, g.is_parametric());
}

Circuit& Circuit::add(const GateKind& g, std::size_t q, bool trainable) {
  if (g.arity() != 1) throw StructuralError("add: use add_cnot for CNOT");
  return push(Operation{g, {q, 0}, trainable});
}

Circuit& Circuit::add_cnot(std::size_t control, std::size_t target) {
  return push(Operation{GateKind::cnot(), {control, target}, false});
}

Circuit& Circuit::push(const Operation& op) {
  validate(op);
  ops_.push_back(op);
  return *this;
}

std::vector<double> Circuit::trainable_angles() const {
  std::vector<double> out;
  for (const auto& op : ops_) {
    if (!op.trainable) continue;
    for (std::size_t i = 0; i < op.gate.angle_count(); ++i) {
      out.push_back(op.gate.angles[i]);
    }
  }
  return out;
}

std::size_t Circuit::trainable_angle_count() const noexcept {
  std::size_t n = 0;
  for (const auto& op : ops_) {
    if (op.trainable) n += op.gate.angle_count();
  }
  return n;
}

void Circuit::set_trainable_angles(std::span<const double> angles) {
  if (angles.size() != trainable_angle_count()) {
    throw StructuralError("set_trainable_angles: expected " +
                          std::to_string(trainable_angle_count()) +
                          " angles, got " + std::to_string(angles.size()));
  }
  std::size_t k = 0;
  for (auto& op : ops_) {
    if (!op.trainable) continue;
    for (std::size_t i = 0; i < op.gate.angle_count(); ++i) {
      op.gate.angles[i] = angles[k++];
    }
  }
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "bad integer '" + std::string(tok) + "'");
  }
  return v;
}

double parse_angle(std::string_view tok, std::size_t line) {
  // strtod rather than from_chars<double>: the latter is missing on older
  // libstdc++ builds.
  const std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || !std::isfinite(v)) {
    throw ParseError(line, "bad angle '" + s + "'");
  }
  return v;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tok = split_ws(line);
    if (tok.empty()) continue;

    if (!circuit) {
      if (tok[0] != "qubits" || tok.size() != 2) {
        throw ParseError(line_no, "expected 'qubits <n>' header");
      }
      const std::size_t n = parse_index(tok[1], line_no);
      if (n == 0) throw ParseError(line_no, "qubit count must be positive");
      circuit.emplace(n);
      continue;
    }

    std::string_view name = tok[0];
    bool frozen = false;
    if (!name.empty() && name.back() == '!') {
      frozen = true;
      name.remove_suffix(1);
    }
    const auto tag = tag_from_mnemonic(name);
    if (!tag) throw ParseError(line_no, "unknown gate '" + std::string(tok[0]) + "'");

    GateKind g = GateKind::fixed(*tag);
    if (frozen && !g.is_parametric()) {
      throw ParseError(line_no, "'!' is only valid on rotation gates");
    }
    const std::size_t n_idx = g.arity();
    const std::size_t n_ang = g.angle_count();
    if (tok.size() != 1 + n_idx + n_ang) {
      throw ParseError(line_no, "'" + std::string(name) + "' expects " +
                                    std::to_string(n_idx) + " qubit(s) and " +
                                    std::to_string(n_ang) + " angle(s)");
    }
    Operation op;
    op.gate = g;
    for (std::size_t i = 0; i < n_idx; ++i) {
      op.qubit_slots[i] = parse_index(tok[1 + i], line_no);
    }
    for (std::size_t i = 0; i < n_ang; ++i) {
      op.gate.angles[i] = parse_angle(tok[1 + n_idx + i], line_no);
    }
    op.trainable = g.is_parametric() && !frozen;
    try {
      circuit->push(op);
    } catch (const StructuralError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!circuit) throw ParseError(line_no, "missing 'qubits <n>' header");
  return *std::move(circuit);
}

std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "qubits " << c.n_qubits();
  for (const auto& op : c.ops()) {
    os << '\n' << mnemonic(op.gate.tag);
    if (op.gate.is_parametric() && !op.trainable) os << '!';
    for (std::size_t q : op.qubits()) os << ' ' << q;
    for (std::size_t i = 0; i < op.gate.angle_count(); ++i) {
      os << ' ' << op.gate.angles[i];
    }
  }
  return os.str();
}

namespace {

/// Schedules ops ASAP on their wires; returns the final layer index.
class DepthCounter {
 public:
  explicit DepthCounter(std::size_t n) : wire_(n, 0) {}

  void place(std::span<const std::size_t> qubits) {
    std::size_t t = 0;
    for (std::size_t q : qubits) t = std::max(t, wire_[q]);
    ++t;
    for (std::size_t q : qubits) wire_[q] = t;
  }

  [[nodiscard]] std::size_t depth() const {
    return wire_.empty() ? 0 : *std::max_element(wire_.begin(), wire_.end());
  }

 private:
  std::vector<std::size_t> wire_;
};

}  // namespace

CircuitMetrics metrics(const Circuit& c) {
  CircuitMetrics m;
  DepthCounter logical(c.n_qubits());
  DepthCounter decomposed(c.n_qubits());
  for (const auto& op : c.ops()) {
    logical.place(op.qubits());
    ++m.logical_gate_count;
    const auto seq = decompose_to_basis(op.gate);
    for (std::size_t i = 0; i < seq.size(); ++i) decomposed.place(op.qubits());
    m.decomposed_gate_count += seq.size();
    if (op.trainable) m.remaining_parameters += op.gate.angle_count();
  }
  m.logical_depth = logical.depth();
  m.decomposed_depth = decomposed.depth();
  return m;
}

UnitaryMatrix full_unitary(const Circuit& c) {
  if (c.n_qubits() > kMaxFullUnitaryQubits) {
    throw StructuralError("full_unitary: " + std::to_string(c.n_qubits()) +
                          " qubits exceeds the dense limit of " +
                          std::to_string(kMaxFullUnitaryQubits));
  }
  UnitaryMatrix acc = UnitaryMatrix::identity(std::size_t{1} << c.n_qubits());
  for (const auto& op : c.ops()) {
    acc = multiply(embed(op.gate, op.qubits(), c.n_qubits()), acc);
  }
  return acc;
}

}  // namespace pqc
