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
 * @file greedy.hpp
 * @brief Greedy approximation of a 2x2 unitary by non-parametric gates.
 *
 * Each iteration scores every alphabet gate (except the previously accepted
 * one) appended to the current sequence, sorts the scores ascending with
 * ties in catalog order, draws one of the best `top_k` uniformly, and keeps
 * it only if it strictly lowers the running distance.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pqc_forge/gates.hpp"
#include "pqc_forge/matrix.hpp"

namespace pqc {

/// Score given to gates that were not evaluated in an iteration.
inline constexpr double kUnscoredDistance = 1000.0;

struct GreedyParams {
  std::size_t iterations = 20;
  std::size_t top_k = 4;
  DistanceMetric metric = DistanceMetric::PhaseInvariant;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless 1 <= top_k <= 11 and iterations >= 1.
  void validate() const;
};

struct GreedyStep {
  /// Indexed like kAlphabet; the excluded previous gate keeps kUnscoredDistance.
  std::array<double, kAlphabet.size()> candidate_distances{};
  GateTag chosen = GateTag::Id;
  bool accepted = false;
};

struct GreedyResult {
  std::vector<GateTag> sequence;  // time order
  double final_dist = kUnscoredDistance;
  std::vector<GreedyStep> trace;
};

/// Runs the search on `target` using the random stream (params.seed, stream).
/// Callers optimizing many gates pass a distinct stream per gate so results
/// do not depend on evaluation order.
[[nodiscard]] GreedyResult param_gate_transform(const UnitaryMatrix& target,
                                                const GreedyParams& params,
                                                std::uint64_t stream = 0);

/// Random stream of restart `r` for a search on `stream`. Restart 0 is the
/// stream itself.
[[nodiscard]] constexpr std::uint64_t restart_stream(std::uint64_t stream,
                                                     std::size_t r) noexcept {
  return stream + (static_cast<std::uint64_t>(r) << 32);
}

/// Best of `restarts` runs on restart_stream(stream, 0), (stream, 1), ...;
/// ties keep the earliest run.
[[nodiscard]] GreedyResult param_gate_transform_restarts(
    const UnitaryMatrix& target, const GreedyParams& params,
    std::size_t restarts, std::uint64_t stream = 0);

/// Number of {CX, ID, RZ, SX, X} gates the sequence expands to.
[[nodiscard]] std::size_t basis_cost(const std::vector<GateTag>& seq);

/// Same runs as param_gate_transform_restarts, but among runs with
/// final_dist < tolerance the one with the smallest basis_cost wins (then the
/// smaller distance, then the earlier run). With no such run the result is
/// the best-distance run.
[[nodiscard]] GreedyResult param_gate_transform_within(
    const UnitaryMatrix& target, const GreedyParams& params, double tolerance,
    std::size_t restarts, std::uint64_t stream = 0);

/// Product of a gate sequence given in time order.
[[nodiscard]] UnitaryMatrix sequence_unitary(const std::vector<GateTag>& seq);

struct OracleResult {
  std::vector<GateTag> sequence;
  double distance = 0.0;
};

inline constexpr std::size_t kMaxOracleLength = 5;

/// Exhaustive minimum over all alphabet words of length 0..max_len
/// (including the empty word). Distances within 1e-12 count as ties; the
/// shortest word wins ties, then lexicographic catalog order.
[[nodiscard]] OracleResult exhaustive_oracle(const UnitaryMatrix& target,
                                             std::size_t max_len,
                                             DistanceMetric metric);

}  // namespace pqc
