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

#include <numeric>
#include <random>

#include "pqc_forge/error.hpp"
#include "pqc_forge/optimizer.hpp"
#include "pqc_forge/qnn.hpp"
#include "support.hpp"

using namespace pqc;
using oracle::kPi;

namespace {

const Dataset& iris() {
  static const Dataset d =
      load_dataset(DatasetName::Iris, std::string(PQC_FORGE_DATA_DIR) + "/iris.data", 0);
  return d;
}

// Random model over a 4-qubit register with mixed trainable rotations,
// including R3 gates and frozen rotations.
Model random_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  Model m;
  m.n_features = 4;
  m.n_classes = 3;
  m.ansatz = Circuit(4);
  for (int l = 0; l < 2; ++l) {
    for (std::size_t q = 0; q < 4; ++q) {
      switch ((q + static_cast<std::size_t>(l)) % 4) {
        case 0: m.ansatz.add(GateKind::rx(a(rng)), q, true); break;
        case 1: m.ansatz.add(GateKind::ry(a(rng)), q, true); break;
        case 2: m.ansatz.add(GateKind::r3(a(rng), a(rng), a(rng)), q, true); break;
        default: m.ansatz.add(GateKind::rz(a(rng)), q, false); break;
      }
    }
    for (std::size_t q = 0; q < 4; ++q) m.ansatz.add_cnot(q, (q + 1) % 4);
    m.ansatz.add(GateKind::fixed(GateTag::H), 1);
  }
  return m;
}

double loss_at(Model m, const std::vector<double>& theta, std::span<const std::size_t> batch) {
  m.ansatz.set_trainable_angles(theta);
  return loss(m, iris(), batch);
}

}  // namespace

TEST_CASE("model structure for Iris") {
  const Model bel = build_model({LayerKind::BasicEntangler, 5, 8}, iris(), 0);
  std::size_t rx = 0, cx = 0;
  for (const auto& op : bel.ansatz.ops()) {
    rx += op.gate.tag == GateTag::RX && op.trainable;
    cx += op.gate.tag == GateTag::CNOT;
  }
  CHECK(rx == 40);
  CHECK(cx == 40);
  CHECK(bel.ansatz.trainable_angle_count() == 40);
  CHECK(metrics(bel.ansatz).remaining_parameters == 40);

  const Model sel = build_model({LayerKind::StronglyEntangling, 5, 8}, iris(), 0);
  CHECK(sel.ansatz.trainable_angle_count() == 120);
  CHECK(sel.ansatz.trainable_angle_count() == 3 * bel.ansatz.trainable_angle_count());

  CHECK_THROWS_AS((void)build_model({LayerKind::BasicEntangler, 1, 2}, iris(), 0),
                  StructuralError);
  CHECK_THROWS_AS((void)build_ansatz({LayerKind::BasicEntangler, 0, 2}, 0), StructuralError);
}

TEST_CASE("initial angles lie in (-pi, pi) and depend on the seed") {
  const auto a = build_ansatz({LayerKind::StronglyEntangling, 3, 4}, 1).trainable_angles();
  const auto b = build_ansatz({LayerKind::StronglyEntangling, 3, 4}, 2).trainable_angles();
  for (double x : a) {
    CHECK(x > -kPi);
    CHECK(x < kPi);
  }
  CHECK(a != b);
  CHECK(a == build_ansatz({LayerKind::StronglyEntangling, 3, 4}, 1).trainable_angles());
}

TEST_CASE("entangler ranges") {
  CHECK(entangler_range(LayerKind::BasicEntangler, 3, 8) == 1);
  CHECK(entangler_range(LayerKind::StronglyEntangling, 0, 8) == 1);
  CHECK(entangler_range(LayerKind::StronglyEntangling, 6, 8) == 7);
  CHECK(entangler_range(LayerKind::StronglyEntangling, 7, 8) == 1);
  CHECK(entangler_range(LayerKind::StronglyEntangling, 2, 1) == 0);
}

TEST_CASE("cyclic angle encoding") {
  const Model m = build_model({LayerKind::BasicEntangler, 1, 8}, iris(), 0);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
  const Circuit enc = m.encode(x);
  REQUIRE(enc.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(enc.ops()[i].gate == GateKind::rx(x[i % 4]));
    CHECK(enc.ops()[i].qubit() == i);
    CHECK_FALSE(enc.ops()[i].trainable);
  }
  // More features than qubits: every feature still lands once.
  Model wide;
  wide.n_features = 5;
  wide.n_classes = 2;
  wide.ansatz = Circuit(3);
  const Circuit e2 = wide.encode(std::vector<double>{1, 2, 3, 4, 5});
  REQUIRE(e2.size() == 5);
  CHECK(e2.ops()[3].qubit() == 0);
  CHECK(e2.ops()[4].gate == GateKind::rx(5));
  CHECK_THROWS_AS((void)m.encode(std::vector<double>{1.0}), StructuralError);
}

TEST_CASE("forward pass readout") {
  Model m;
  m.n_features = 2;
  m.n_classes = 2;
  m.ansatz = Circuit(2);
  const auto p = forward(m, std::vector<double>{0.0, 0.0});
  CHECK(p.logits == std::vector<double>{1.0, 1.0});
  CHECK(p.probabilities[0] == doctest::Approx(0.5));
  CHECK(p.probabilities[1] == doctest::Approx(0.5));

  // RX(x) on qubit q gives <Z_q> = cos(x).
  const auto p2 = forward(m, std::vector<double>{kPi, 0.3});
  CHECK(p2.logits[0] == doctest::Approx(-1.0));
  CHECK(p2.logits[1] == doctest::Approx(std::cos(0.3)));
  CHECK(p2.argmax() == 1);

  const Model r = random_model(3);
  for (std::size_t i : iris().test) {
    const auto q = forward(r, iris().features[i]);
    REQUIRE(q.logits.size() == 3);
    CHECK(std::accumulate(q.probabilities.begin(), q.probabilities.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (double l : q.logits) {
      CHECK(l >= -1.0 - 1e-12);
      CHECK(l <= 1.0 + 1e-12);
    }
  }
  CHECK(loss(r, iris(), iris().test) > 0.0);
}

TEST_CASE("parameter-shift gradient matches finite differences") {
  const std::vector<std::size_t> batch(iris().train.begin(), iris().train.begin() + 12);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Model m = random_model(seed);
    const auto grad = gradient(m, iris(), batch);
    const auto theta = m.ansatz.trainable_angles();
    REQUIRE(grad.size() == theta.size());
    const double h = 1e-4;
    for (std::size_t p = 0; p < theta.size(); ++p) {
      auto plus = theta, minus = theta;
      plus[p] += h;
      minus[p] -= h;
      const double fd = (loss_at(m, plus, batch) - loss_at(m, minus, batch)) / (2 * h);
      CAPTURE(p);
      CHECK(std::abs(grad[p] - fd) <= 1e-4);
    }
  }
}

TEST_CASE("gradient of a frozen-only model is empty") {
  Model m = random_model(5);
  Circuit frozen(4);
  for (auto op : m.ansatz.ops()) {
    op.trainable = false;
    frozen.push(op);
  }
  m.ansatz = frozen;
  const std::vector<std::size_t> batch{iris().train[0]};
  CHECK(gradient(m, iris(), batch).empty());
}

TEST_CASE("gradient vanishes at a one-parameter minimum") {
  Model m;
  m.n_features = 4;
  m.n_classes = 3;
  m.ansatz = Circuit(3);
  m.ansatz.add(GateKind::ry(0.0), 0, true);
  m.ansatz.add_cnot(0, 1);
  const std::vector<std::size_t> batch(iris().train.begin(), iris().train.begin() + 30);
  auto f = [&](double t) { return loss_at(m, {t}, batch); };
  // Coarse grid, then golden-section refinement.
  double best = -kPi;
  for (int k = 0; k < 720; ++k) {
    const double t = -kPi + 2 * kPi * k / 720;
    if (f(t) < f(best)) best = t;
  }
  double lo = best - 2 * kPi / 720, hi = best + 2 * kPi / 720;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 80; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (f(a) < f(b)) hi = b; else lo = a;
  }
  m.ansatz.set_trainable_angles(std::vector<double>{(lo + hi) / 2});
  const auto grad = gradient(m, iris(), batch);
  REQUIRE(grad.size() == 1);
  CHECK(std::abs(grad[0]) <= 1e-6);
}

TEST_CASE("gradient does not depend on the worker count") {
  const Model m = random_model(7);
  const std::vector<std::size_t> batch(iris().train.begin(), iris().train.begin() + 17);
  const auto a = gradient(m, iris(), batch, 1);
  const auto b = gradient(m, iris(), batch, 3);
  CHECK(a == b);
}

TEST_CASE("training is deterministic and lowers the loss") {
  const Model m = build_model({LayerKind::BasicEntangler, 2, 4}, iris(), 3);
  TrainConfig cfg;
  cfg.epochs = 8;
  cfg.learning_rate = 0.05;
  cfg.seed = 4;
  const auto r1 = train(m, iris(), cfg);
  cfg.jobs = 2;
  const auto r2 = train(m, iris(), cfg);
  CHECK(r1.model.ansatz == r2.model.ansatz);
  REQUIRE(r1.history.epochs.size() == 8);
  CHECK(r1.history.epochs.back().train_loss < r1.history.epochs.front().train_loss);
  CHECK(r1.history.batch_size == 16);
  CHECK(r1.model.ansatz.trainable_angles() != m.ansatz.trainable_angles());
}

TEST_CASE("retraining leaves frozen gates and structure alone") {
  const Model m = build_model({LayerKind::BasicEntangler, 2, 4}, iris(), 5);
  OptimizeConfig oc;
  oc.tolerance = 0.08;
  Model opt = m;
  opt.ansatz = optimize(m.ansatz, oc).first;
  REQUIRE(opt.ansatz.trainable_angle_count() > 0);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.learning_rate = 0.05;
  const auto r = retrain(opt, iris(), cfg);
  const auto& before = opt.ansatz.ops();
  const auto& after = r.model.ansatz.ops();
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(before[i].gate.tag == after[i].gate.tag);
    CHECK(before[i].trainable == after[i].trainable);
    if (!before[i].trainable) CHECK(before[i] == after[i]);
  }
  CHECK(r.history.warnings.empty());
}

TEST_CASE("retraining a parameter-free model warns and returns it unchanged") {
  Model m;
  m.n_features = 4;
  m.n_classes = 3;
  m.ansatz = Circuit(4);
  m.ansatz.add(GateKind::fixed(GateTag::SX), 0);
  m.ansatz.add_cnot(0, 1);
  TrainConfig cfg;
  cfg.epochs = 20;
  const auto r = retrain(m, iris(), cfg);
  CHECK(r.model.ansatz == m.ansatz);
  REQUIRE(r.history.warnings.size() == 1);
  CHECK(r.history.epochs.empty());
}

TEST_CASE("train config validation") {
  TrainConfig cfg;
  cfg.epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epochs = 1;
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.learning_rate = 1e-3;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("layer kind names") {
  CHECK(parse_layer_kind("sel") == LayerKind::StronglyEntangling);
  CHECK(to_string(LayerKind::BasicEntangler) == "bel");
  CHECK_THROWS_AS((void)parse_layer_kind("xyz"), std::invalid_argument);
}
