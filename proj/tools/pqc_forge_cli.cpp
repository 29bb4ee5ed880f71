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

// pqc-forge: build, measure, optimize, sweep, train and evaluate layered
// parametric circuits.
//
// Exit codes: 0 success, 1 runtime/evaluation failure, 2 usage error.

#include <chrono>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pqc_forge/circuit.hpp"
#include "pqc_forge/dataset.hpp"
#include "pqc_forge/error.hpp"
#include "pqc_forge/gates.hpp"
#include "pqc_forge/greedy.hpp"
#include "pqc_forge/io.hpp"
#include "pqc_forge/optimizer.hpp"
#include "pqc_forge/qnn.hpp"

#ifndef PQC_FORGE_DATA_DIR
#define PQC_FORGE_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("PQC_FORGE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-') {
    throw UsageError(std::string("PQC_FORGE_SEED must be an unsigned integer, got '") + env +
                     "'");
  }
  return v;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path manifest_path(const fs::path& out) {
  fs::path p = out;
  p += ".manifest.json";
  return p;
}

struct Invocation {
  std::string command;
  std::vector<std::string> argv;
};

void write_manifest(const fs::path& out, const Invocation& inv, const json& flags,
                    const json& seeds) {
  json m{{"tool", "pqc-forge"},
         {"version", PQC_FORGE_VERSION},
         {"command", inv.command},
         {"argv", inv.argv},
         {"flags", flags},
         {"seeds", seeds},
         {"output", out.string()},
         {"created_utc", utc_now()}};
  pqc::write_text_file(manifest_path(out), m.dump(2) + "\n");
}

// True when both paths name the same file, whether or not it exists yet.
bool same_file(const fs::path& a, const fs::path& b) {
  std::error_code ec;
  if (fs::exists(a, ec) && fs::exists(b, ec)) return fs::equivalent(a, b, ec);
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

fs::path default_data_path(pqc::DatasetName name) {
  return fs::path(PQC_FORGE_DATA_DIR) /
         (name == pqc::DatasetName::Iris ? "iris.data" : "digits.csv");
}

fs::path data_path_or_default(const std::string& flag, pqc::DatasetName name) {
  return flag.empty() ? default_data_path(name) : fs::path(flag);
}

// Reloads the split a stored model was built against and checks that the
// normalization matches what the sidecar recorded.
pqc::Dataset dataset_for(const pqc::StoredModel& sm, const std::string& data_flag) {
  pqc::Dataset d = pqc::load_dataset(sm.info.dataset,
                                     data_path_or_default(data_flag, sm.info.dataset),
                                     sm.info.data_seed);
  if (d.n_features() != sm.model.n_features || d.n_classes() != sm.model.n_classes) {
    throw pqc::DataError("dataset shape differs from the model sidecar");
  }
  for (std::size_t j = 0; j < d.n_features(); ++j) {
    if (std::abs(d.norm_min[j] - sm.info.norm_min.at(j)) > 1e-9 ||
        std::abs(d.norm_max[j] - sm.info.norm_max.at(j)) > 1e-9) {
      throw pqc::DataError("dataset normalization differs from the model sidecar; "
                           "pass the --data file the model was built with");
    }
  }
  return d;
}

std::string join_tags(const std::vector<pqc::GateTag>& seq) {
  if (seq.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += '.';
    s += pqc::mnemonic(seq[i]);
  }
  return s;
}

void print_metrics(std::ostream& os, const pqc::CircuitMetrics& m) {
  os << "depth " << m.decomposed_depth << "\n"
     << "gates " << m.decomposed_gate_count << "\n"
     << "params " << m.remaining_parameters << "\n"
     << "logical_depth " << m.logical_depth << "\n"
     << "logical_gates " << m.logical_gate_count << "\n";
}

// Greedy and optimizer flags shared by optimize and sweep.
struct SearchFlags {
  std::size_t iters = 20;
  std::size_t top_k = 4;
  std::string metric = "phase-invariant";
  std::optional<std::uint64_t> seed;
  std::size_t restarts = 1;
  std::size_t jobs = 1;
  std::string mode = "per-gate";
  bool allow_growth = false;

  void attach(CLI::App* app) {
    app->add_option("--iters", iters, "Greedy iterations per gate")->capture_default_str();
    app->add_option("--top-k", top_k, "Random pick among the k best candidates")
        ->capture_default_str();
    app->add_option("--metric", metric, "phase-invariant | literal-real")
        ->capture_default_str();
    app->add_option("--seed", seed, "Search seed (falls back to PQC_FORGE_SEED, then 0)");
    app->add_option("--restarts", restarts, "Independent greedy runs per gate")
        ->capture_default_str();
    app->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    app->add_option("--mode", mode, "per-gate | fused")->capture_default_str();
    app->add_flag("--allow-growth", allow_growth,
                  "Accept replacements that cost more basis gates than the original");
  }

  pqc::OptimizeConfig config(double tolerance) const {
    pqc::OptimizeConfig cfg;
    cfg.tolerance = tolerance;
    cfg.greedy.iterations = iters;
    cfg.greedy.top_k = top_k;
    try {
      cfg.greedy.metric = pqc::parse_distance_metric(metric);
      cfg.mode = pqc::parse_optimize_mode(mode);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    cfg.greedy.seed = resolve_seed(seed);
    cfg.restarts = restarts;
    cfg.jobs = std::max<std::size_t>(1, jobs);
    cfg.no_growth = !allow_growth;
    return cfg;
  }

  json to_json(const pqc::OptimizeConfig& cfg) const {
    return {{"iters", cfg.greedy.iterations},
            {"top_k", cfg.greedy.top_k},
            {"metric", std::string(pqc::to_string(cfg.greedy.metric))},
            {"seed", cfg.greedy.seed},
            {"restarts", cfg.restarts},
            {"jobs", cfg.jobs},
            {"mode", std::string(pqc::to_string(cfg.mode))},
            {"no_growth", cfg.no_growth}};
  }
};

// ---------------------------------------------------------------------------

struct ApproxGateCmd {
  std::string gate;
  std::optional<double> angle;
  bool grid = false;
  std::size_t iters = 20;
  std::size_t top_k = 4;
  std::string metric = "phase-invariant";
  std::optional<std::uint64_t> seed;
  std::size_t restarts = 1;
  std::size_t oracle_len = 4;
  bool as_json = false;

  void attach(CLI::App& root) {
    CLI::App* app = root.add_subcommand("approx-gate",
                                        "Approximate one rotation with the fixed alphabet");
    app->add_option("--gate", gate, "rx | ry | rz")->required();
    auto* a = app->add_option("--angle", angle, "Rotation angle in radians");
    auto* g = app->add_flag("--angle-grid", grid, "Angles 0..2pi in steps of pi/4");
    a->excludes(g);
    app->add_option("--iters", iters)->capture_default_str();
    app->add_option("--top-k", top_k)->capture_default_str();
    app->add_option("--metric", metric, "phase-invariant | literal-real")
        ->capture_default_str();
    app->add_option("--seed", seed);
    app->add_option("--restarts", restarts)->capture_default_str();
    app->add_option("--oracle-len", oracle_len, "Exhaustive search length bound")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{0}, pqc::kMaxOracleLength));
    app->add_flag("--json", as_json, "Print JSON instead of a table");
  }

  int run() const {
    if (!angle && !grid) throw UsageError("approx-gate: pass --angle or --angle-grid");
    pqc::GreedyParams p;
    p.iterations = iters;
    p.top_k = top_k;
    p.seed = resolve_seed(seed);
    try {
      p.metric = pqc::parse_distance_metric(metric);
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (restarts < 1) throw UsageError("--restarts must be >= 1");
    pqc::GateKind (*make)(double) = nullptr;
    if (gate == "rx") make = &pqc::GateKind::rx;
    else if (gate == "ry") make = &pqc::GateKind::ry;
    else if (gate == "rz") make = &pqc::GateKind::rz;
    else throw UsageError("--gate must be rx, ry or rz");

    std::vector<double> angles;
    if (grid) {
      for (int i = 0; i <= 8; ++i) angles.push_back(i * std::numbers::pi / 4);
    } else {
      angles.push_back(*angle);
    }

    json rows = json::array();
    std::ostringstream table;
    table << std::left << std::setw(12) << "angle" << std::setw(24) << "sequence"
          << std::setw(14) << "distance" << std::setw(14) << "oracle" << "oracle_sequence\n";
    for (double th : angles) {
      const pqc::UnitaryMatrix target = pqc::unitary(make(th));
      const pqc::GreedyResult r = pqc::param_gate_transform_restarts(target, p, restarts, 0);
      const pqc::OracleResult o = pqc::exhaustive_oracle(target, oracle_len, p.metric);
      std::vector<std::string> seq;
      for (auto t : r.sequence) seq.emplace_back(pqc::mnemonic(t));
      std::vector<std::string> oseq;
      for (auto t : o.sequence) oseq.emplace_back(pqc::mnemonic(t));
      rows.push_back({{"gate", gate},
                      {"angle", th},
                      {"sequence", seq},
                      {"distance", r.final_dist},
                      {"oracle_sequence", oseq},
                      {"oracle_distance", o.distance}});
      std::ostringstream ang, d, od;
      ang << std::fixed << std::setprecision(6) << th;
      d << std::scientific << std::setprecision(4) << r.final_dist;
      od << std::scientific << std::setprecision(4) << o.distance;
      table << std::setw(12) << ang.str() << std::setw(24) << join_tags(r.sequence)
            << std::setw(14) << d.str() << std::setw(14) << od.str()
            << join_tags(o.sequence) << "\n";
    }
    if (as_json) {
      std::cout << rows.dump(2) << "\n";
    } else {
      std::cout << table.str();
    }
    return 0;
  }
};

struct BuildCmd {
  std::string layer = "bel";
  std::size_t layers = 5;
  std::optional<std::size_t> qubits;
  std::string dataset;
  std::string data;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> data_seed;
  std::string out;

  void attach(CLI::App& root) {
    CLI::App* app = root.add_subcommand("build", "Create an untrained model");
    app->add_option("--layer", layer, "bel | sel")->capture_default_str();
    app->add_option("--layers", layers)->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--qubits", qubits, "Default: 8 for iris, 10 for digits");
    app->add_option("--dataset", dataset, "iris | digits")->required();
    app->add_option("--data", data, "Dataset file (default: bundled copy)");
    app->add_option("--seed", seed, "Initial-angle seed");
    app->add_option("--data-seed", data_seed, "Split seed (default: --seed)");
    app->add_option("--out", out, "Model circuit path")->required();
  }

  int run(const Invocation& inv) const {
    pqc::DatasetName dn;
    pqc::LayerSpec spec;
    try {
      dn = pqc::parse_dataset_name(dataset);
      spec.kind = pqc::parse_layer_kind(layer);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    spec.layers = layers;
    spec.n_qubits = qubits.value_or(dn == pqc::DatasetName::Iris ? 8 : 10);
    const std::uint64_t s = resolve_seed(seed);
    const std::uint64_t ds = data_seed.value_or(s);
    const pqc::Dataset d = pqc::load_dataset(dn, data_path_or_default(data, dn), ds);

    pqc::StoredModel sm;
    sm.model = pqc::build_model(spec, d, s);
    sm.info.dataset = dn;
    sm.info.data_seed = ds;
    sm.info.layer_kind = spec.kind;
    sm.info.layers = spec.layers;
    sm.info.init_seed = s;
    sm.info.norm_min = d.norm_min;
    sm.info.norm_max = d.norm_max;
    sm.info.lineage.push_back({{"step", "build"}, {"seed", s}});
    pqc::save_model(out, sm);

    const json flags{{"layer", std::string(pqc::to_string(spec.kind))},
                     {"layers", spec.layers},
                     {"qubits", spec.n_qubits},
                     {"dataset", std::string(pqc::to_string(dn))},
                     {"data", data_path_or_default(data, dn).string()}};
    write_manifest(out, inv, flags, {{"init", s}, {"data", ds}});
    print_metrics(std::cout, pqc::metrics(sm.model.ansatz));
    return 0;
  }
};

struct MetricsCmd {
  std::string in;
  bool as_json = false;

  void attach(CLI::App& root) {
    CLI::App* app = root.add_subcommand("metrics", "Depth, gate count and parameters");
    app->add_option("--in", in, "Circuit file")->required();
    app->add_flag("--json", as_json);
  }

  int run() const {
    const pqc::CircuitMetrics m = pqc::metrics(pqc::load_circuit(in));
    if (as_json) {
      std::cout << pqc::to_json(m).dump(2) << "\n";
    } else {
      print_metrics(std::cout, m);
    }
    return 0;
  }
};

struct OptimizeCmd {
  std::string in;
  std::string out;
  std::string report;
  double tolerance = 0.05;
  SearchFlags search;

  void attach(CLI::App& root) {
    CLI::App* app = root.add_subcommand(
        "optimize", "Replace rotations whose fixed-gate approximation beats the tolerance");
    app->add_option("--in", in, "Input circuit or model")->required();
    app->add_option("--out", out, "Output circuit")->required();
    app->add_option("--tolerance", tolerance)->capture_default_str();
    app->add_option("--report", report, "Report JSON (default: <out>.report.json)");
    search.attach(app);
  }

  int run(const Invocation& inv) const {
    const pqc::OptimizeConfig cfg = search.config(tolerance);
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (same_file(in, out)) throw UsageError("--out must differ from --in");
    const pqc::Circuit c = pqc::load_circuit(in);
    const auto [opt, rep] = pqc::optimize(c, cfg);

    const fs::path report_path = report.empty() ? fs::path(out + ".report.json") : fs::path(report);
    json flags = search.to_json(cfg);
    flags["tolerance"] = tolerance;
    flags["in"] = in;
    flags["report"] = report_path.string();

    const fs::path in_side = pqc::sidecar_path(in);
    if (fs::exists(in_side)) {
      pqc::StoredModel sm = pqc::load_model(in);
      sm.model.ansatz = opt;
      json step = flags;
      step["step"] = "optimize";
      step["replaced"] = rep.replaced_count();
      sm.info.lineage.push_back(step);
      pqc::save_model(out, sm);
    } else {
      pqc::save_circuit(out, opt);
    }
    pqc::write_text_file(report_path, pqc::to_json(rep).dump(2) + "\n");
    write_manifest(out, inv, flags, {{"search", cfg.greedy.seed}});

    std::cout << "replaced " << rep.replaced_count() << " of " << rep.ledger.size()
              << " targets\n"
              << "depth " << rep.before.decomposed_depth << " -> " << rep.after.decomposed_depth
              << "\n"
              << "gates " << rep.before.decomposed_gate_count << " -> "
              << rep.after.decomposed_gate_count << "\n"
              << "params " << rep.before.remaining_parameters << " -> "
              << rep.after.remaining_parameters << "\n";
    return 0;
  }
};

struct SweepCmd {
  std::string in;
  std::vector<double> tolerances;
  std::string dataset;
  std::string data;
  std::string out;
  std::string json_out;
  SearchFlags search;

  void attach(CLI::App& root) {
    CLI::App* app = root.add_subcommand("sweep", "Optimize at several tolerances");
    app->add_option("--in", in, "Input circuit or model")->required();
    app->add_option("--tolerances", tolerances, "Comma-separated list")
        ->required()
        ->delimiter(',');
    app->add_option("--dataset", dataset,
                    "Evaluate test accuracy on this dataset (needs a model sidecar)");
    app->add_option("--data", data, "Dataset file (default: bundled copy)");
    app->add_option("--out", out, "CSV path (default: stdout)");
    app->add_option("--json", json_out, "Also write rows as JSON");
    search.attach(app);
  }

  int run(const Invocation& inv) const {
    const pqc::OptimizeConfig cfg = search.config(1.0);
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    for (double t : tolerances) {
      if (!(t >= 0.0)) throw UsageError("tolerances must be >= 0");
    }
    const pqc::Circuit c = pqc::load_circuit(in);
    pqc::CircuitEvaluator eval;
    std::optional<pqc::StoredModel> sm;
    std::optional<pqc::Dataset> d;
    if (!dataset.empty()) {
      pqc::DatasetName dn;
      try {
        dn = pqc::parse_dataset_name(dataset);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      sm = pqc::load_model(in);
      if (sm->info.dataset != dn) {
        throw pqc::DataError("model was built for '" +
                             std::string(pqc::to_string(sm->info.dataset)) + "', not '" +
                             dataset + "'");
      }
      d = dataset_for(*sm, data);
      eval = [&](const pqc::Circuit& opt) {
        pqc::Model m = sm->model;
        m.ansatz = opt;
        return pqc::accuracy(m, *d, d->test);
      };
    }
    const auto rows = pqc::sweep(c, tolerances, cfg, eval);
    const std::string csv = pqc::sweep_csv(rows);
    if (out.empty()) {
      std::cout << csv;
    } else {
      pqc::write_text_file(out, csv);
    }
    if (!json_out.empty()) pqc::write_text_file(json_out, pqc::to_json(rows).dump(2) + "\n");

    json flags = search.to_json(cfg);
    flags["in"] = in;
    flags["tolerances"] = tolerances;
    flags["dataset"] = dataset;
    if (!out.empty()) write_manifest(out, inv, flags, {{"search", cfg.greedy.seed}});
    if (!json_out.empty()) write_manifest(json_out, inv, flags, {{"search", cfg.greedy.seed}});
    return 0;
  }
};

struct TrainCmd {
  bool is_retrain = false;
  std::string in;
  std::string out;
  std::string data;
  std::string history;
  std::size_t epochs = 50;
  double lr = 1e-3;
  std::size_t batch_size = 16;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool quiet = false;

  explicit TrainCmd(bool retrain) : is_retrain(retrain), epochs(retrain ? 20 : 50) {}

  void attach(CLI::App& root) {
    CLI::App* app = is_retrain
                        ? root.add_subcommand("retrain",
                                              "Fine-tune the surviving rotations of a model")
                        : root.add_subcommand("train", "Train a model with Adam");
    app->add_option("--in", in, "Model circuit (with sidecar)")->required();
    app->add_option("--out", out, "Output model")->required();
    app->add_option("--data", data, "Dataset file (default: bundled copy)");
    app->add_option("--epochs", epochs)->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--lr", lr)->capture_default_str();
    app->add_option("--batch-size", batch_size)->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Shuffle seed");
    app->add_option("--jobs", jobs)->capture_default_str();
    app->add_option("--history", history, "Per-epoch CSV");
    app->add_flag("--quiet", quiet, "Only print the final accuracy");
  }

  int run(const Invocation& inv) const {
    pqc::TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.learning_rate = lr;
    cfg.batch_size = batch_size;
    cfg.seed = resolve_seed(seed);
    cfg.jobs = std::max<std::size_t>(1, jobs);
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (same_file(in, out)) throw UsageError("--out must differ from --in");
    pqc::StoredModel sm = pqc::load_model(in);
    const pqc::Dataset d = dataset_for(sm, data);

    const pqc::TrainResult r = is_retrain ? pqc::retrain(sm.model, d, cfg)
                                          : pqc::train(sm.model, d, cfg);
    for (const auto& w : r.history.warnings) std::cerr << "warning: " << w << "\n";
    if (!quiet) {
      std::cout << "epoch 0 test_accuracy " << r.history.initial_test_accuracy << "\n";
      for (const auto& e : r.history.epochs) {
        std::cout << "epoch " << e.epoch << " loss " << e.train_loss << " test_accuracy "
                  << e.test_accuracy << "\n";
      }
    }
    const double final_acc = r.history.epochs.empty() ? r.history.initial_test_accuracy
                                                      : r.history.epochs.back().test_accuracy;
    std::cout << "test_accuracy " << final_acc << "\n";

    json flags{{"epochs", cfg.epochs},       {"lr", cfg.learning_rate},
               {"beta1", cfg.beta1},         {"beta2", cfg.beta2},
               {"epsilon", cfg.epsilon},     {"batch_size", cfg.batch_size},
               {"jobs", cfg.jobs},           {"in", in},
               {"data", data_path_or_default(data, sm.info.dataset).string()}};
    sm.model = r.model;
    json step = flags;
    step["step"] = is_retrain ? "retrain" : "train";
    step["seed"] = cfg.seed;
    step["test_accuracy"] = final_acc;
    if (!r.history.warnings.empty()) step["warnings"] = r.history.warnings;
    sm.info.lineage.push_back(step);
    pqc::save_model(out, sm);
    if (!history.empty()) {
      pqc::write_text_file(history, pqc::history_csv(r.history));
      write_manifest(history, inv, flags, {{"shuffle", cfg.seed}});
    }
    json seeds{{"shuffle", cfg.seed}, {"data", sm.info.data_seed}, {"init", sm.info.init_seed}};
    json manifest_flags = flags;
    manifest_flags["history"] = pqc::to_json(r.history);
    write_manifest(out, inv, manifest_flags, seeds);
    return 0;
  }
};

struct EvalCmd {
  std::string in;
  std::string data;
  std::string split = "test";
  bool as_json = false;

  void attach(CLI::App& root) {
    CLI::App* app = root.add_subcommand("eval", "Accuracy and loss of a model");
    app->add_option("--in", in, "Model circuit (with sidecar)")->required();
    app->add_option("--data", data, "Dataset file (default: bundled copy)");
    app->add_option("--split", split, "test | train | all")
        ->capture_default_str()
        ->check(CLI::IsMember({"test", "train", "all"}));
    app->add_flag("--json", as_json);
  }

  int run() const {
    const pqc::StoredModel sm = pqc::load_model(in);
    const pqc::Dataset d = dataset_for(sm, data);
    std::vector<std::size_t> idx;
    if (split == "test") {
      idx = d.test;
    } else if (split == "train") {
      idx = d.train;
    } else {
      idx.resize(d.labels.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    }
    if (idx.empty()) throw pqc::DataError("split '" + split + "' is empty");
    const double acc = pqc::accuracy(sm.model, d, idx);
    const double l = pqc::loss(sm.model, d, idx);
    const auto correct = static_cast<std::size_t>(std::llround(acc * static_cast<double>(idx.size())));
    if (as_json) {
      std::cout << json{{"split", split},
                        {"samples", idx.size()},
                        {"accuracy", acc},
                        {"loss", l},
                        {"metrics", pqc::to_json(pqc::metrics(sm.model.ansatz))}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "accuracy " << acc << " (" << correct << "/" << idx.size() << ")\n"
                << "loss " << l << "\n";
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pqc-forge: replace trained rotations with fixed gates and measure the result"};
  app.set_version_flag("--version", std::string(PQC_FORGE_VERSION));
  app.require_subcommand(1);

  ApproxGateCmd approx;
  BuildCmd build;
  MetricsCmd metrics_cmd;
  OptimizeCmd optimize_cmd;
  SweepCmd sweep_cmd;
  TrainCmd train_cmd(false);
  TrainCmd retrain_cmd(true);
  EvalCmd eval_cmd;
  approx.attach(app);
  build.attach(app);
  metrics_cmd.attach(app);
  optimize_cmd.attach(app);
  sweep_cmd.attach(app);
  train_cmd.attach(app);
  retrain_cmd.attach(app);
  eval_cmd.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Invocation inv;
  inv.argv.assign(argv + 1, argv + argc);
  try {
    CLI::App* sub = app.get_subcommands().front();
    inv.command = sub->get_name();
    if (inv.command == "approx-gate") return approx.run();
    if (inv.command == "build") return build.run(inv);
    if (inv.command == "metrics") return metrics_cmd.run();
    if (inv.command == "optimize") return optimize_cmd.run(inv);
    if (inv.command == "sweep") return sweep_cmd.run(inv);
    if (inv.command == "train") return train_cmd.run(inv);
    if (inv.command == "retrain") return retrain_cmd.run(inv);
    if (inv.command == "eval") return eval_cmd.run();
  } catch (const UsageError& e) {
    std::cerr << "pqc-forge: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pqc-forge " << inv.command << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
