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
#include <set>

#include "pqc_forge/dataset.hpp"
#include "pqc_forge/error.hpp"
#include "support.hpp"

using namespace pqc;
using oracle::kPi;

namespace {

std::string data_file(const char* name) {
  return std::string(PQC_FORGE_DATA_DIR) + "/" + name;
}

std::size_t count_label(const Dataset& d, const std::vector<std::size_t>& idx, std::size_t c) {
  return static_cast<std::size_t>(
      std::count_if(idx.begin(), idx.end(), [&](std::size_t i) { return d.labels[i] == c; }));
}

}  // namespace

TEST_CASE("iris shape and stratified split") {
  const Dataset d = load_dataset(DatasetName::Iris, data_file("iris.data"), 0);
  CHECK(d.features.size() == 150);
  CHECK(d.n_classes() == 3);
  CHECK(d.n_features() == 4);
  CHECK(d.train.size() == 120);
  CHECK(d.test.size() == 30);
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(count_label(d, d.train, c) == 40);
    CHECK(count_label(d, d.test, c) == 10);
  }
  std::set<std::size_t> all(d.train.begin(), d.train.end());
  for (std::size_t i : d.test) CHECK(all.insert(i).second);
  CHECK(all.size() == 150);
  CHECK(*all.rbegin() == 149);
}

TEST_CASE("split depends only on the seed") {
  const Dataset a = load_dataset(DatasetName::Iris, data_file("iris.data"), 3);
  const Dataset b = load_dataset(DatasetName::Iris, data_file("iris.data"), 3);
  const Dataset c = load_dataset(DatasetName::Iris, data_file("iris.data"), 4);
  CHECK(a.train == b.train);
  CHECK(a.features == b.features);
  CHECK(a.test != c.test);
}

TEST_CASE("features are scaled to [0, pi] from training bounds") {
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const Dataset d = load_dataset(DatasetName::Iris, data_file("iris.data"), seed);
    for (const auto& x : d.features) {
      for (double v : x) {
        CHECK(v >= 0.0);
        CHECK(v <= kPi);
      }
    }
    // Each feature touches both ends on the training split.
    for (std::size_t f = 0; f < d.n_features(); ++f) {
      double lo = 1e9, hi = -1e9;
      for (std::size_t i : d.train) {
        lo = std::min(lo, d.features[i][f]);
        hi = std::max(hi, d.features[i][f]);
      }
      CHECK(lo == doctest::Approx(0.0));
      CHECK(hi == doctest::Approx(kPi));
      CHECK(d.norm_min[f] < d.norm_max[f]);
    }
  }
}

TEST_CASE("scaling uses raw training values") {
  // Two classes, five rows each; the single held-out row per class may fall
  // outside the training range and is clamped.
  std::string csv;
  for (int i = 0; i < 5; ++i) {
    csv += std::to_string(i) + ",1,1,1,Iris-setosa\n";
    csv += std::to_string(10 + i) + ",2,2,2,Iris-versicolor\n";
  }
  const Dataset d = parse_dataset(DatasetName::Iris, csv, 0);
  CHECK(d.train.size() == 8);
  CHECK(d.test.size() == 2);
  double lo = 1e9, hi = -1e9;
  for (std::size_t i : d.train) {
    const double raw = i % 2 ? 10 + static_cast<double>(i / 2) : static_cast<double>(i / 2);
    lo = std::min(lo, raw);
    hi = std::max(hi, raw);
  }
  CHECK(d.norm_min[0] == lo);
  CHECK(d.norm_max[0] == hi);
  for (std::size_t i : d.train) {
    const double raw = i % 2 ? 10 + static_cast<double>(i / 2) : static_cast<double>(i / 2);
    CHECK(d.features[i][0] == doctest::Approx((raw - lo) / (hi - lo) * kPi));
  }
}

TEST_CASE("digits keep classes 0 and 1 with ten features") {
  const Dataset d = load_dataset(DatasetName::Digits01, data_file("digits.csv"), 0);
  CHECK(d.n_classes() == 2);
  CHECK(d.n_features() == 10);
  CHECK(d.features.size() > 300);
  for (std::size_t y : d.labels) CHECK(y < 2);
  CHECK(d.train.size() + d.test.size() == d.features.size());
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS((void)load_dataset(DatasetName::Iris, data_file("missing.data"), 0), DataError);
  CHECK_THROWS_AS((void)parse_dataset(DatasetName::Iris, "1,2,3,Iris-setosa\n", 0), DataError);
  CHECK_THROWS_AS((void)parse_dataset(DatasetName::Iris, "1,2,x,4,Iris-setosa\n", 0), DataError);
  CHECK_THROWS_AS((void)parse_dataset(DatasetName::Iris, "1,2,3,4,Iris-rosea\n", 0), DataError);
  CHECK_THROWS_AS((void)parse_dataset(DatasetName::Iris, "", 0), DataError);
  CHECK_THROWS_AS((void)parse_dataset_name("mnist"), std::invalid_argument);
  CHECK(parse_dataset_name("iris") == DatasetName::Iris);
}
