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
 * @file dataset.hpp
 * @brief CSV ingestion for the Iris and Digits (0/1) classification sets.
 *
 * Iris rows: four numeric features then a class name
 * (Iris-setosa, Iris-versicolor, Iris-virginica).
 * Digits rows: 64 pixel values (8x8, row-major) then the digit label. Only
 * digits 0 and 1 are kept; each image is 2x2 mean-pooled to 4x4 and the
 * first 10 pooled values are used as features.
 *
 * The split is stratified 80/20 from the seed; features are min/max scaled
 * to [0, pi] with bounds taken from the training split only (test values
 * are clamped into range).
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pqc {

enum class DatasetName { Iris, Digits01 };

[[nodiscard]] std::string_view to_string(DatasetName d) noexcept;
[[nodiscard]] DatasetName parse_dataset_name(std::string_view name);

struct Dataset {
  DatasetName name = DatasetName::Iris;
  std::vector<std::vector<double>> features;  // scaled to [0, pi]
  std::vector<std::size_t> labels;
  std::vector<std::string> class_names;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::vector<double> norm_min;
  std::vector<double> norm_max;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t n_classes() const noexcept {
    return class_names.size();
  }
  [[nodiscard]] std::size_t n_features() const noexcept {
    return norm_min.size();
  }
};

inline constexpr double kTestFraction = 0.2;

[[nodiscard]] Dataset load_dataset(DatasetName name,
                                   const std::filesystem::path& path,
                                   std::uint64_t seed);

/// Same, from CSV text already in memory.
[[nodiscard]] Dataset parse_dataset(DatasetName name, std::string_view csv,
                                    std::uint64_t seed);

}  // namespace pqc
