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
 * @file optimizer.hpp
 * @brief Replaces rotation gates by non-parametric approximations.
 *
 * Every RX/RY/RZ (and each factor of an R3) is approximated with the greedy
 * search; when the achieved distance is strictly below the tolerance the
 * gate is replaced by the frozen gate sequence, otherwise it is kept as is.
 * CNOTs and fixed gates pass through untouched.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/greedy.hpp"

namespace pqc {

enum class OptimizeMode {
  /// One search per rotation factor.
  PerGate,
  /// One search per maximal run of rotations on a wire.
  FusedRuns,
};

[[nodiscard]] std::string_view to_string(OptimizeMode m) noexcept;
[[nodiscard]] OptimizeMode parse_optimize_mode(std::string_view name);

struct OptimizeConfig {
  double tolerance = 0.05;
  GreedyParams greedy;
  OptimizeMode mode = OptimizeMode::PerGate;
  std::size_t restarts = 1;
  /// Worker threads for the per-target searches (results do not depend on it).
  std::size_t jobs = 1;
  /// Full-unitary before/after distance is reported up to this many qubits.
  std::size_t global_distance_max_qubits = 6;
  /// Skip replacements that would cost more basis gates than the rotation
  /// they stand for. Keeps sweeps monotone in gate count.
  bool no_growth = true;

  void validate() const;
};

struct LedgerEntry {
  /// Indices of the input ops covered by this target (one unless fused).
  std::vector<std::size_t> source_ops;
  /// R3 factor index (0 = RZ(phi), 1 = RY(theta), 2 = RZ(omega)); unset
  /// for plain rotations and fused runs.
  std::optional<std::size_t> factor;
  std::size_t qubit = 0;
  /// The rotations the target was built from, in time order.
  std::vector<GateKind> original;
  bool replaced = false;
  double distance = 0.0;
  /// Greedy output including any Id gates (dropped when spliced).
  std::vector<GateTag> replacement;
  /// Basis-gate cost of the original rotations and of the replacement.
  std::size_t original_cost = 0;
  std::size_t replacement_cost = 0;
  std::uint64_t stream = 0;
};

struct OptimizeReport {
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  DistanceMetric metric = DistanceMetric::PhaseInvariant;
  OptimizeMode mode = OptimizeMode::PerGate;
  bool no_growth = true;
  std::vector<LedgerEntry> ledger;
  CircuitMetrics before;
  CircuitMetrics after;
  std::optional<double> global_distance;
  std::size_t transform_calls = 0;

  [[nodiscard]] std::size_t replaced_count() const;
};

/// Number of single-angle rotation factors: RX/RY/RZ count 1, R3 counts 3.
[[nodiscard]] std::size_t parametric_factor_count(const Circuit& c);

[[nodiscard]] std::pair<Circuit, OptimizeReport> optimize(
    const Circuit& c, const OptimizeConfig& cfg);

struct SweepRow {
  double tolerance = 0.0;
  CircuitMetrics metrics;
  std::size_t replaced = 0;
  std::optional<double> accuracy;
};

/// Scores an optimized circuit (typically test accuracy).
using CircuitEvaluator = std::function<double(const Circuit&)>;

/// One row per tolerance in the given order. A tolerance of 0 yields the
/// unmodified baseline row.
[[nodiscard]] std::vector<SweepRow> sweep(const Circuit& c,
                                          const std::vector<double>& tolerances,
                                          const OptimizeConfig& cfg,
                                          const CircuitEvaluator& eval = {});

}  // namespace pqc
