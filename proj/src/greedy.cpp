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

#include "pqc_forge/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "pqc_forge/error.hpp"
#include "pqc_forge/rng.hpp"

namespace pqc {
namespace {

const std::array<UnitaryMatrix, kAlphabet.size()>& alphabet_unitaries() {
  static const auto table = [] {
    std::array<UnitaryMatrix, kAlphabet.size()> t{
        UnitaryMatrix::identity(2), UnitaryMatrix::identity(2),
        UnitaryMatrix::identity(2), UnitaryMatrix::identity(2),
        UnitaryMatrix::identity(2), UnitaryMatrix::identity(2),
        UnitaryMatrix::identity(2), UnitaryMatrix::identity(2),
        UnitaryMatrix::identity(2), UnitaryMatrix::identity(2),
        UnitaryMatrix::identity(2)};
    for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
      t[i] = unitary(GateKind::fixed(kAlphabet[i]));
    }
    return t;
  }();
  return table;
}

void require_single_qubit(const UnitaryMatrix& target, const char* who) {
  if (target.dim() != 2) {
    throw StructuralError(std::string(who) + ": target must be 2x2, got " +
                          std::to_string(target.dim()) + "x" +
                          std::to_string(target.dim()));
  }
}

}  // namespace

void GreedyParams::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (top_k < 1 || top_k > kAlphabet.size()) {
    throw std::invalid_argument("top_k must be in [1, " +
                                std::to_string(kAlphabet.size()) + "]");
  }
}

GreedyResult param_gate_transform(const UnitaryMatrix& target,
                                  const GreedyParams& params,
                                  std::uint64_t stream) {
  require_single_qubit(target, "param_gate_transform");
  params.validate();
  const auto& gates = alphabet_unitaries();
  Rng rng = make_rng(params.seed, stream);

  GreedyResult result;
  result.trace.reserve(params.iterations);
  UnitaryMatrix current = UnitaryMatrix::identity(2);
  std::optional<std::size_t> prev;

  std::array<std::size_t, kAlphabet.size()> order{};
  std::array<UnitaryMatrix, kAlphabet.size()> trial = gates;

  for (std::size_t it = 0; it < params.iterations; ++it) {
    GreedyStep step;
    step.candidate_distances.fill(kUnscoredDistance);
    for (std::size_t g = 0; g < kAlphabet.size(); ++g) {
      if (prev && *prev == g) continue;
      // Appending a gate in time means multiplying on the left.
      trial[g] = multiply(gates[g], current);
      step.candidate_distances[g] = distance(target, trial[g], params.metric);
    }

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return step.candidate_distances[a] <
                              step.candidate_distances[b];
                     });
    const std::size_t best = order[uniform_index(rng, params.top_k)];
    step.chosen = kAlphabet[best];

    const double best_dist = step.candidate_distances[best];
    if (best_dist < result.final_dist) {
      step.accepted = true;
      prev = best;
      result.final_dist = best_dist;
      result.sequence.push_back(kAlphabet[best]);
      current = trial[best];
    }
    result.trace.push_back(step);
  }
  return result;
}

GreedyResult param_gate_transform_restarts(const UnitaryMatrix& target,
                                           const GreedyParams& params,
                                           std::size_t restarts,
                                           std::uint64_t stream) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  GreedyResult best = param_gate_transform(target, params, stream);
  for (std::size_t r = 1; r < restarts; ++r) {
    GreedyResult cand = param_gate_transform(target, params, restart_stream(stream, r));
    if (cand.final_dist < best.final_dist) best = std::move(cand);
  }
  return best;
}

std::size_t basis_cost(const std::vector<GateTag>& seq) {
  std::size_t n = 0;
  for (GateTag t : seq) n += decompose_to_basis(GateKind::fixed(t)).size();
  return n;
}

GreedyResult param_gate_transform_within(const UnitaryMatrix& target,
                                         const GreedyParams& params, double tolerance,
                                         std::size_t restarts, std::uint64_t stream) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  std::optional<GreedyResult> fit;
  std::size_t fit_cost = 0;
  std::optional<GreedyResult> best;
  for (std::size_t r = 0; r < restarts; ++r) {
    GreedyResult cand = param_gate_transform(target, params, restart_stream(stream, r));
    if (cand.final_dist < tolerance) {
      const std::size_t cost = basis_cost(cand.sequence);
      if (!fit || cost < fit_cost ||
          (cost == fit_cost && cand.final_dist < fit->final_dist)) {
        fit_cost = cost;
        fit = cand;
      }
    }
    if (!best || cand.final_dist < best->final_dist) best = std::move(cand);
  }
  return fit ? std::move(*fit) : std::move(*best);
}

UnitaryMatrix sequence_unitary(const std::vector<GateTag>& seq) {
  UnitaryMatrix acc = UnitaryMatrix::identity(2);
  for (GateTag t : seq) {
    if (t == GateTag::CNOT) {
      throw StructuralError("sequence_unitary: CNOT in a single-qubit sequence");
    }
    acc = multiply(unitary(GateKind::fixed(t)), acc);
  }
  return acc;
}

namespace {

constexpr double kOracleTie = 1e-12;

struct OracleSearch {
  const UnitaryMatrix& target;
  std::size_t max_len;
  DistanceMetric metric;
  std::vector<std::size_t> word;
  OracleResult best;
  std::size_t best_len = 0;

  void consider(const UnitaryMatrix& product) {
    const double d = distance(target, product, metric);
    // Distances within kOracleTie are rounding noise; the shorter word wins.
    const bool tie = std::abs(d - best.distance) <= kOracleTie;
    if ((!tie && d < best.distance) || (tie && word.size() < best_len)) {
      best.distance = d;
      best_len = word.size();
      best.sequence.clear();
      for (std::size_t i : word) best.sequence.push_back(kAlphabet[i]);
    }
  }

  void descend(const UnitaryMatrix& product) {
    if (word.size() == max_len) return;
    const auto& gates = alphabet_unitaries();
    for (std::size_t g = 0; g < gates.size(); ++g) {
      word.push_back(g);
      const UnitaryMatrix next = multiply(gates[g], product);
      consider(next);
      descend(next);
      word.pop_back();
    }
  }
};

}  // namespace

OracleResult exhaustive_oracle(const UnitaryMatrix& target, std::size_t max_len,
                               DistanceMetric metric) {
  require_single_qubit(target, "exhaustive_oracle");
  if (max_len > kMaxOracleLength) {
    throw std::invalid_argument("exhaustive_oracle: max_len " +
                                std::to_string(max_len) + " exceeds " +
                                std::to_string(kMaxOracleLength));
  }
  OracleSearch search{target, max_len, metric, {}, {}, 0};
  const UnitaryMatrix id = UnitaryMatrix::identity(2);
  search.best.distance = distance(target, id, metric);
  search.descend(id);
  return search.best;
}

}  // namespace pqc
