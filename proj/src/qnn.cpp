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

#include "pqc_forge/qnn.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "pqc_forge/error.hpp"
#include "pqc_forge/rng.hpp"
#include "pqc_forge/sim.hpp"

namespace pqc {
namespace {

using std::numbers::pi;

constexpr std::uint64_t kAnsatzStream = 0xA45A7200ULL;
constexpr std::uint64_t kShuffleStream = 0x5A0FF1E0ULL;

std::vector<double> readout(const StateVector& s, std::size_t n_classes) {
  std::vector<double> out(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) out[c] = expect_z(s, c);
  return out;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  const double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

StateVector encoded_state(const Model& m, std::span<const double> x) {
  StateVector s(m.n_qubits());
  run_in_place(m.encode(x), s);
  return s;
}

struct SampleGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

SampleGrad sample_gradient(const Model& m, std::span<const double> x,
                           std::size_t label) {
  const auto& ops = m.ansatz.ops();
  const StateVector encoded = encoded_state(m, x);

  StateVector out = encoded;
  run_in_place(m.ansatz, out);
  const auto probs = softmax(readout(out, m.n_classes));

  SampleGrad g;
  g.loss = -std::log(std::max(probs[label], 1e-300));
  // d(cross-entropy)/d(logit_c) = p_c - [c == label]
  std::vector<double> dlogit = probs;
  dlogit[label] -= 1.0;

  g.grad.reserve(m.ansatz.trainable_angle_count());
  StateVector prefix = encoded;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Operation& op = ops[i];
    if (op.trainable) {
      for (std::size_t a = 0; a < op.gate.angle_count(); ++a) {
        std::array<std::vector<double>, 2> shifted_logits;
        for (int side = 0; side < 2; ++side) {
          Operation shifted = op;
          shifted.gate.angles[a] += side == 0 ? pi / 2.0 : -pi / 2.0;
          StateVector t = prefix;
          t.apply(shifted);
          for (std::size_t j = i + 1; j < ops.size(); ++j) t.apply(ops[j]);
          shifted_logits[side] = readout(t, m.n_classes);
        }
        double d = 0.0;
        for (std::size_t c = 0; c < m.n_classes; ++c) {
          d += dlogit[c] * 0.5 * (shifted_logits[0][c] - shifted_logits[1][c]);
        }
        g.grad.push_back(d);
      }
    }
    prefix.apply(op);
  }
  return g;
}

/// Runs fn(k) for k in [0, n) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) fn(k);
    });
  }
}

SampleGrad batch_gradient(const Model& m, const Dataset& d,
                          std::span<const std::size_t> batch, std::size_t jobs) {
  std::vector<SampleGrad> per(batch.size());
  parallel_for(batch.size(), jobs, [&](std::size_t k) {
    const std::size_t i = batch[k];
    per[k] = sample_gradient(m, d.features[i], d.labels[i]);
  });
  SampleGrad total;
  total.grad.assign(m.ansatz.trainable_angle_count(), 0.0);
  for (const auto& s : per) {
    total.loss += s.loss;
    for (std::size_t p = 0; p < total.grad.size(); ++p) total.grad[p] += s.grad[p];
  }
  if (!batch.empty()) {
    const double inv = 1.0 / static_cast<double>(batch.size());
    total.loss *= inv;
    for (double& v : total.grad) v *= inv;
  }
  return total;
}

TrainResult train_loop(Model m, const Dataset& d, const TrainConfig& cfg) {
  cfg.validate();
  TrainResult result;
  result.history.batch_size = cfg.batch_size;
  result.history.initial_test_accuracy = accuracy(m, d, d.test);

  std::vector<double> theta = m.ansatz.trainable_angles();
  std::vector<double> mom(theta.size(), 0.0);
  std::vector<double> vel(theta.size(), 0.0);
  std::size_t step = 0;

  std::vector<std::size_t> order = d.train;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Rng rng = make_rng(cfg.seed, kShuffleStream + epoch);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[uniform_index(rng, i)]);
    }
    double loss_sum = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t len = std::min(cfg.batch_size, order.size() - start);
      const std::span<const std::size_t> batch(order.data() + start, len);
      const SampleGrad g = batch_gradient(m, d, batch, cfg.jobs);
      loss_sum += g.loss * static_cast<double>(len);
      seen += len;

      ++step;
      const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      for (std::size_t p = 0; p < theta.size(); ++p) {
        mom[p] = cfg.beta1 * mom[p] + (1.0 - cfg.beta1) * g.grad[p];
        vel[p] = cfg.beta2 * vel[p] + (1.0 - cfg.beta2) * g.grad[p] * g.grad[p];
        const double mhat = mom[p] / bc1;
        const double vhat = vel[p] / bc2;
        theta[p] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.epsilon);
      }
      m.ansatz.set_trainable_angles(theta);
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = seen ? loss_sum / static_cast<double>(seen) : 0.0;
    rec.test_accuracy = accuracy(m, d, d.test);
    result.history.epochs.push_back(rec);
  }
  result.model = std::move(m);
  return result;
}

}  // namespace

std::string_view to_string(LayerKind k) noexcept {
  switch (k) {
    case LayerKind::BasicEntangler:
      return "bel";
    case LayerKind::StronglyEntangling:
      return "sel";
  }
  return "unknown";
}

LayerKind parse_layer_kind(std::string_view name) {
  if (name == "bel") return LayerKind::BasicEntangler;
  if (name == "sel") return LayerKind::StronglyEntangling;
  throw std::invalid_argument("unknown layer kind '" + std::string(name) +
                              "' (expected bel|sel)");
}

std::size_t entangler_range(LayerKind kind, std::size_t layer,
                            std::size_t n_qubits) noexcept {
  if (n_qubits < 2) return 0;
  if (kind == LayerKind::BasicEntangler) return 1;
  return (layer % (n_qubits - 1)) + 1;
}

Circuit build_ansatz(const LayerSpec& spec, std::uint64_t seed) {
  if (spec.layers == 0) throw StructuralError("ansatz needs at least one layer");
  Circuit c(spec.n_qubits);
  Rng rng = make_rng(seed, kAnsatzStream);
  auto angle = [&rng] { return uniform(rng, -pi, pi); };
  const std::size_t n = spec.n_qubits;
  for (std::size_t l = 0; l < spec.layers; ++l) {
    for (std::size_t q = 0; q < n; ++q) {
      if (spec.kind == LayerKind::BasicEntangler) {
        c.add(GateKind::rx(angle()), q);
      } else {
        const double phi = angle();
        const double theta = angle();
        const double omega = angle();
        c.add(GateKind::r3(phi, theta, omega), q);
      }
    }
    const std::size_t r = entangler_range(spec.kind, l, n);
    if (r == 0) continue;
    for (std::size_t q = 0; q < n; ++q) c.add_cnot(q, (q + r) % n);
  }
  return c;
}

Circuit Model::encode(std::span<const double> x) const {
  if (x.size() != n_features) {
    throw StructuralError("encode: expected " + std::to_string(n_features) +
                          " features, got " + std::to_string(x.size()));
  }
  const std::size_t n = n_qubits();
  Circuit c(n);
  const std::size_t count = std::max(n, n_features);
  for (std::size_t i = 0; i < count; ++i) {
    c.add(GateKind::rx(x[i % n_features]), i % n, false);
  }
  return c;
}

Model build_model(const LayerSpec& spec, const Dataset& data, std::uint64_t seed) {
  if (data.n_classes() > spec.n_qubits) {
    throw StructuralError("model: " + std::to_string(data.n_classes()) +
                          " classes need at least as many qubits, got " +
                          std::to_string(spec.n_qubits));
  }
  Model m;
  m.n_features = data.n_features();
  m.n_classes = data.n_classes();
  m.ansatz = build_ansatz(spec, seed);
  return m;
}

std::size_t Prediction::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(probabilities.begin(), probabilities.end()) -
      probabilities.begin());
}

Prediction forward(const Model& m, std::span<const double> x) {
  StateVector s = encoded_state(m, x);
  run_in_place(m.ansatz, s);
  Prediction p;
  p.logits = readout(s, m.n_classes);
  p.probabilities = softmax(p.logits);
  return p;
}

double loss(const Model& m, const Dataset& d, std::span<const std::size_t> samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i : samples) {
    const Prediction p = forward(m, d.features[i]);
    acc += -std::log(std::max(p.probabilities[d.labels[i]], 1e-300));
  }
  return acc / static_cast<double>(samples.size());
}

double accuracy(const Model& m, const Dataset& d, std::span<const std::size_t> samples) {
  if (samples.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i : samples) {
    if (forward(m, d.features[i]).argmax() == d.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

std::vector<double> gradient(const Model& m, const Dataset& d,
                             std::span<const std::size_t> batch, std::size_t jobs) {
  return batch_gradient(m, d, batch, jobs).grad;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
}

TrainResult train(Model m, const Dataset& d, const TrainConfig& cfg) {
  return train_loop(std::move(m), d, cfg);
}

TrainResult retrain(Model m, const Dataset& d, const TrainConfig& cfg) {
  if (m.ansatz.trainable_angle_count() == 0) {
    cfg.validate();
    TrainResult r;
    r.history.batch_size = cfg.batch_size;
    r.history.initial_test_accuracy = accuracy(m, d, d.test);
    r.history.warnings.push_back(
        "model has no trainable angles left; returned unchanged");
    r.model = std::move(m);
    return r;
  }
  return train_loop(std::move(m), d, cfg);
}

}  // namespace pqc
