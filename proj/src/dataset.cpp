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

#include "pqc_forge/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pqc_forge/error.hpp"
#include "pqc_forge/rng.hpp"

namespace pqc {
namespace {

constexpr std::size_t kDigitsPixels = 64;
constexpr std::size_t kDigitsFeatures = 10;

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma - start);
    while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.front()))) cell.remove_prefix(1);
    while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.back()))) cell.remove_suffix(1);
    out.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_number(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw DataError("line " + std::to_string(line) + ": malformed value '" + s + "'");
  }
  return v;
}

struct RawRows {
  std::vector<std::vector<double>> x;
  std::vector<std::size_t> y;
  std::vector<std::string> classes;
};

RawRows read_iris(std::string_view csv) {
  RawRows raw;
  raw.classes = {"Iris-setosa", "Iris-versicolor", "Iris-virginica"};
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 5) {
      throw DataError("line " + std::to_string(n) + ": expected 5 columns, got " +
                      std::to_string(cells.size()));
    }
    std::vector<double> x(4);
    for (std::size_t j = 0; j < 4; ++j) x[j] = to_number(cells[j], n);
    const auto it = std::find(raw.classes.begin(), raw.classes.end(), cells[4]);
    if (it == raw.classes.end()) {
      throw DataError("line " + std::to_string(n) + ": unknown label '" + cells[4] + "'");
    }
    raw.x.push_back(std::move(x));
    raw.y.push_back(static_cast<std::size_t>(it - raw.classes.begin()));
  }
  return raw;
}

RawRows read_digits01(std::string_view csv) {
  RawRows raw;
  raw.classes = {"0", "1"};
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (cells.size() != kDigitsPixels + 1) {
      throw DataError("line " + std::to_string(n) + ": expected 65 columns, got " +
                      std::to_string(cells.size()));
    }
    const double label = to_number(cells.back(), n);
    if (label != std::floor(label) || label < 0 || label > 9) {
      throw DataError("line " + std::to_string(n) + ": unknown label '" +
                      cells.back() + "'");
    }
    if (label > 1) continue;
    std::vector<double> px(kDigitsPixels);
    for (std::size_t j = 0; j < kDigitsPixels; ++j) px[j] = to_number(cells[j], n);
    // 8x8 -> 4x4 mean pool, row-major, keep the first 10.
    std::vector<double> pooled;
    pooled.reserve(16);
    for (std::size_t r = 0; r < 8; r += 2) {
      for (std::size_t c = 0; c < 8; c += 2) {
        pooled.push_back((px[r * 8 + c] + px[r * 8 + c + 1] +
                          px[(r + 1) * 8 + c] + px[(r + 1) * 8 + c + 1]) / 4.0);
      }
    }
    pooled.resize(kDigitsFeatures);
    raw.x.push_back(std::move(pooled));
    raw.y.push_back(static_cast<std::size_t>(label));
  }
  return raw;
}

}  // namespace

std::string_view to_string(DatasetName d) noexcept {
  switch (d) {
    case DatasetName::Iris:
      return "iris";
    case DatasetName::Digits01:
      return "digits";
  }
  return "unknown";
}

DatasetName parse_dataset_name(std::string_view name) {
  if (name == "iris") return DatasetName::Iris;
  if (name == "digits" || name == "digits01") return DatasetName::Digits01;
  throw std::invalid_argument("unknown dataset '" + std::string(name) +
                              "' (expected iris|digits)");
}

Dataset parse_dataset(DatasetName name, std::string_view csv, std::uint64_t seed) {
  RawRows raw = name == DatasetName::Iris ? read_iris(csv) : read_digits01(csv);
  if (raw.x.empty()) throw DataError("dataset contains no samples");

  Dataset d;
  d.name = name;
  d.seed = seed;
  d.class_names = raw.classes;
  d.labels = raw.y;

  // Stratified split: shuffle each class independently, hold out 20%.
  for (std::size_t c = 0; c < d.class_names.size(); ++c) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < raw.y.size(); ++i) {
      if (raw.y[i] == c) idx.push_back(i);
    }
    Rng rng = make_rng(seed, 0x5EED0000ULL + c);
    for (std::size_t i = idx.size(); i > 1; --i) {
      std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
    }
    const auto n_test = static_cast<std::size_t>(
        std::llround(kTestFraction * static_cast<double>(idx.size())));
    d.test.insert(d.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    d.train.insert(d.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(d.train.begin(), d.train.end());
  std::sort(d.test.begin(), d.test.end());
  if (d.train.empty()) throw DataError("training split is empty");

  const std::size_t nf = raw.x.front().size();
  d.norm_min.assign(nf, std::numeric_limits<double>::infinity());
  d.norm_max.assign(nf, -std::numeric_limits<double>::infinity());
  for (std::size_t i : d.train) {
    for (std::size_t j = 0; j < nf; ++j) {
      d.norm_min[j] = std::min(d.norm_min[j], raw.x[i][j]);
      d.norm_max[j] = std::max(d.norm_max[j], raw.x[i][j]);
    }
  }
  d.features.resize(raw.x.size());
  for (std::size_t i = 0; i < raw.x.size(); ++i) {
    d.features[i].resize(nf);
    for (std::size_t j = 0; j < nf; ++j) {
      const double span = d.norm_max[j] - d.norm_min[j];
      double v = span > 0.0 ? (raw.x[i][j] - d.norm_min[j]) / span : 0.0;
      v = std::clamp(v, 0.0, 1.0);
      d.features[i][j] = v * std::numbers::pi;
    }
  }
  return d;
}

Dataset load_dataset(DatasetName name, const std::filesystem::path& path,
                     std::uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(name, buf.str(), seed);
}

}  // namespace pqc
