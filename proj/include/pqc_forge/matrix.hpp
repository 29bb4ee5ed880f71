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
 * @file matrix.hpp
 * @brief Dense complex unitary matrices and the trace-based distance metric.
 *
 * Matrices are row-major, dimension a power of two, and small (2x2 for the
 * gate search, at most 2^10 for test-only full-circuit unitaries).
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace pqc {

using cplx = std::complex<double>;

/// Entry-wise tolerance on U^dagger U - I used by the unitarity check.
inline constexpr double kUnitarityTolerance = 1e-12;

class UnitaryMatrix {
 public:
  /// Identity of the given dimension (power of two, >= 2).
  static UnitaryMatrix identity(std::size_t dim);

  /// Builds from row-major entries and verifies unitarity within `tol`.
  /// Throws StructuralError on a bad dimension or a non-unitary input.
  static UnitaryMatrix from_entries(std::size_t dim, std::vector<cplx> entries,
                                    double tol = kUnitarityTolerance);

  /// Same as from_entries without the unitarity check (dimension still
  /// validated). For results of unitary-preserving arithmetic.
  static UnitaryMatrix from_entries_unchecked(std::size_t dim,
                                              std::vector<cplx> entries);

  static UnitaryMatrix from_rows(
      std::initializer_list<std::initializer_list<cplx>> rows,
      double tol = kUnitarityTolerance);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  [[nodiscard]] const cplx& operator()(std::size_t row,
                                       std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  [[nodiscard]] const std::vector<cplx>& entries() const noexcept {
    return data_;
  }

  [[nodiscard]] UnitaryMatrix adjoint() const;

  [[nodiscard]] cplx trace() const noexcept;

  /// max |(U^dagger U - I)_ij|
  [[nodiscard]] double unitarity_error() const;

  [[nodiscard]] bool is_unitary(double tol = kUnitarityTolerance) const {
    return unitarity_error() <= tol;
  }

  /// Scales every entry by a unit-modulus phase; stays unitary.
  [[nodiscard]] UnitaryMatrix with_global_phase(double alpha) const;

  /// Applies the matrix to a state vector of matching length.
  [[nodiscard]] std::vector<cplx> apply(const std::vector<cplx>& v) const;

  friend bool operator==(const UnitaryMatrix&, const UnitaryMatrix&) = default;

 private:
  UnitaryMatrix(std::size_t dim, std::vector<cplx> data)
      : dim_(dim), data_(std::move(data)) {}

  std::size_t dim_;
  std::vector<cplx> data_;
};

/// a * b. Throws StructuralError when dimensions differ.
[[nodiscard]] UnitaryMatrix multiply(const UnitaryMatrix& a,
                                     const UnitaryMatrix& b);

/// Tensor product a (x) b; `a` occupies the more significant index bits.
[[nodiscard]] UnitaryMatrix kron(const UnitaryMatrix& a,
                                 const UnitaryMatrix& b);

/// Max entry-wise |a - b|. Throws on dimension mismatch.
[[nodiscard]] double max_abs_diff(const UnitaryMatrix& a,
                                  const UnitaryMatrix& b);

/// How a complex trace Tr(V^dagger U) is reduced to a real distance.
enum class DistanceMetric {
  /// 1 - |Tr(V^dagger U)| / dim, range [0, 1], blind to global phase.
  PhaseInvariant,
  /// 1 - Re Tr(V^dagger U) / dim, range [0, 2].
  LiteralReal,
};

[[nodiscard]] std::string_view to_string(DistanceMetric m) noexcept;

/// Accepts "phase-invariant" / "literal-real". Throws std::invalid_argument.
[[nodiscard]] DistanceMetric parse_distance_metric(std::string_view name);

/// Tr(V^dagger U) without forming the product.
[[nodiscard]] cplx trace_overlap(const UnitaryMatrix& v,
                                 const UnitaryMatrix& u);

/// Distance between the target `u` and the approximation `v`.
[[nodiscard]] double distance(const UnitaryMatrix& u, const UnitaryMatrix& v,
                              DistanceMetric metric = DistanceMetric::PhaseInvariant);

}  // namespace pqc
