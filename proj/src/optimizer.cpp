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

#include "pqc_forge/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

namespace pqc {

std::string_view to_string(OptimizeMode m) noexcept {
  switch (m) {
    case OptimizeMode::PerGate:
      return "per-gate";
    case OptimizeMode::FusedRuns:
      return "fused";
  }
  return "unknown";
}

OptimizeMode parse_optimize_mode(std::string_view name) {
  if (name == "per-gate") return OptimizeMode::PerGate;
  if (name == "fused") return OptimizeMode::FusedRuns;
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected per-gate|fused)");
}

void OptimizeConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  greedy.validate();
}

std::size_t OptimizeReport::replaced_count() const {
  return static_cast<std::size_t>(
      std::count_if(ledger.begin(), ledger.end(),
                    [](const LedgerEntry& e) { return e.replaced; }));
}

std::size_t parametric_factor_count(const Circuit& c) {
  std::size_t n = 0;
  for (const auto& op : c.ops()) n += op.gate.angle_count();
  return n;
}

namespace {

/// Rotation factors of an op in time order (R3 expands to three).
std::vector<GateKind> rotation_factors(const GateKind& g) {
  if (g.tag == GateTag::R3) {
    const auto f = split_r3(g);
    return {f.begin(), f.end()};
  }
  return {g};
}

UnitaryMatrix product_of(const std::vector<GateKind>& gates) {
  UnitaryMatrix acc = UnitaryMatrix::identity(2);
  for (const auto& g : gates) acc = multiply(unitary(g), acc);
  return acc;
}

/// Streams are keyed by op index so results are independent of scheduling.
std::uint64_t stream_for(std::size_t op_index, std::size_t factor) {
  return static_cast<std::uint64_t>(op_index) * 3 + factor;
}

std::vector<LedgerEntry> collect_targets(const Circuit& c, OptimizeMode mode) {
  std::vector<LedgerEntry> targets;
  const auto& ops = c.ops();
  if (mode == OptimizeMode::PerGate) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (!ops[i].gate.is_parametric()) continue;
      const auto factors = rotation_factors(ops[i].gate);
      for (std::size_t f = 0; f < factors.size(); ++f) {
        LedgerEntry e;
        e.source_ops = {i};
        if (ops[i].gate.tag == GateTag::R3) e.factor = f;
        e.qubit = ops[i].qubit();
        e.original = {factors[f]};
        e.original_cost = decompose_to_basis(factors[f]).size();
        e.stream = stream_for(i, f);
        targets.push_back(std::move(e));
      }
    }
    return targets;
  }

  // Fused: a run continues while the next op touching the wire is another
  // single-qubit rotation.
  std::vector<std::optional<std::size_t>> open(c.n_qubits());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    if (op.gate.is_parametric()) {
      auto& slot = open[op.qubit()];
      if (!slot) {
        LedgerEntry e;
        e.qubit = op.qubit();
        e.stream = stream_for(i, 0);
        targets.push_back(std::move(e));
        slot = targets.size() - 1;
      }
      auto& e = targets[*slot];
      e.source_ops.push_back(i);
      e.original_cost += decompose_to_basis(op.gate).size();
      for (const auto& f : rotation_factors(op.gate)) e.original.push_back(f);
    } else {
      for (std::size_t q : op.qubits()) open[q].reset();
    }
  }
  return targets;
}

void run_searches(std::vector<LedgerEntry>& targets, const OptimizeConfig& cfg) {
  auto work = [&](std::size_t k) {
    auto& e = targets[k];
    const GreedyResult r = param_gate_transform_within(
        product_of(e.original), cfg.greedy, cfg.tolerance, cfg.restarts, e.stream);
    e.distance = r.final_dist;
    e.replacement = r.sequence;
    e.replacement_cost = basis_cost(r.sequence);
    e.replaced = r.final_dist < cfg.tolerance &&
                 (!cfg.no_growth || e.replacement_cost <= e.original_cost);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, targets.size()));
  if (jobs == 1) {
    for (std::size_t k = 0; k < targets.size(); ++k) work(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < targets.size(); k = next++) work(k);
    });
  }
}

void emit_replacement(Circuit& out, const LedgerEntry& e) {
  for (GateTag t : e.replacement) {
    if (t == GateTag::Id) continue;
    out.add(GateKind::fixed(t), e.qubit, false);
  }
}

Circuit assemble(const Circuit& c, const std::vector<LedgerEntry>& targets,
                 OptimizeMode mode) {
  const auto& ops = c.ops();
  // Entries touching each op, in factor order.
  std::vector<std::vector<std::size_t>> by_op(ops.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    for (std::size_t i : targets[k].source_ops) by_op[i].push_back(k);
  }

  Circuit out(c.n_qubits());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    if (by_op[i].empty()) {
      out.push(op);
      continue;
    }
    if (mode == OptimizeMode::FusedRuns) {
      const auto& e = targets[by_op[i].front()];
      if (!e.replaced) {
        out.push(op);
      } else if (e.source_ops.back() == i) {
        // The run is contiguous on its wire, so splicing at its last op
        // is equivalent to splicing at its first.
        emit_replacement(out, e);
      }
      continue;
    }
    const bool any_replaced = std::any_of(
        by_op[i].begin(), by_op[i].end(),
        [&](std::size_t k) { return targets[k].replaced; });
    if (!any_replaced) {
      out.push(op);
      continue;
    }
    for (std::size_t k : by_op[i]) {
      const auto& e = targets[k];
      if (e.replaced) {
        emit_replacement(out, e);
      } else {
        out.add(e.original.front(), e.qubit, op.trainable);
      }
    }
  }
  return out;
}

}  // namespace

std::pair<Circuit, OptimizeReport> optimize(const Circuit& c,
                                            const OptimizeConfig& cfg) {
  cfg.validate();
  std::vector<LedgerEntry> targets = collect_targets(c, cfg.mode);
  run_searches(targets, cfg);

  Circuit out = assemble(c, targets, cfg.mode);

  OptimizeReport report;
  report.tolerance = cfg.tolerance;
  report.seed = cfg.greedy.seed;
  report.metric = cfg.greedy.metric;
  report.mode = cfg.mode;
  report.no_growth = cfg.no_growth;
  report.transform_calls = targets.size() * cfg.restarts;
  report.before = metrics(c);
  report.after = metrics(out);
  if (c.n_qubits() <= cfg.global_distance_max_qubits) {
    report.global_distance =
        distance(full_unitary(c), full_unitary(out), DistanceMetric::PhaseInvariant);
  }
  report.ledger = std::move(targets);
  return {std::move(out), std::move(report)};
}

std::vector<SweepRow> sweep(const Circuit& c,
                            const std::vector<double>& tolerances,
                            const OptimizeConfig& cfg,
                            const CircuitEvaluator& eval) {
  if (tolerances.empty()) throw std::invalid_argument("sweep: no tolerances");
  std::vector<SweepRow> rows;
  rows.reserve(tolerances.size());
  for (double tol : tolerances) {
    if (tol < 0.0) throw std::invalid_argument("sweep: negative tolerance");
    SweepRow row;
    row.tolerance = tol;
    if (tol == 0.0) {
      row.metrics = metrics(c);
      if (eval) row.accuracy = eval(c);
    } else {
      OptimizeConfig run = cfg;
      run.tolerance = tol;
      run.global_distance_max_qubits = 0;
      auto [opt, report] = optimize(c, run);
      row.metrics = report.after;
      row.replaced = report.replaced_count();
      if (eval) row.accuracy = eval(opt);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pqc
