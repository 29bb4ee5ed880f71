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

#include "pqc_forge/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pqc_forge/error.hpp"

namespace pqc {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_dim(std::size_t dim, std::size_t n_entries) {
  if (dim < 2 || !is_power_of_two(dim)) {
    throw StructuralError("matrix dimension must be a power of two >= 2, got " +
                          std::to_string(dim));
  }
  if (n_entries != dim * dim) {
    throw StructuralError("expected " + std::to_string(dim * dim) +
                          " entries, got " + std::to_string(n_entries));
  }
}

void check_same_dim(const UnitaryMatrix& a, const UnitaryMatrix& b,
                    const char* op) {
  if (a.dim() != b.dim()) {
    throw StructuralError(std::string(op) + ": dimension mismatch (" +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
  }
}

}  // namespace

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  check_dim(dim, dim * dim);
  std::vector<cplx> data(dim * dim, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) data[i * dim + i] = 1.0;
  return {dim, std::move(data)};
}

UnitaryMatrix UnitaryMatrix::from_entries(std::size_t dim,
                                          std::vector<cplx> entries,
                                          double tol) {
  UnitaryMatrix m = from_entries_unchecked(dim, std::move(entries));
  const double err = m.unitarity_error();
  if (!(err <= tol)) {
    throw StructuralError("matrix is not unitary (max |U^dag U - I| = " +
                          std::to_string(err) + ")");
  }
  return m;
}

UnitaryMatrix UnitaryMatrix::from_entries_unchecked(std::size_t dim,
                                                    std::vector<cplx> entries) {
  check_dim(dim, entries.size());
  return {dim, std::move(entries)};
}

UnitaryMatrix UnitaryMatrix::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows, double tol) {
  const std::size_t dim = rows.size();
  std::vector<cplx> data;
  data.reserve(dim * dim);
  for (const auto& row : rows) {
    if (row.size() != dim) throw StructuralError("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return from_entries(dim, std::move(data), tol);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  std::vector<cplx> out(data_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      out[c * dim_ + r] = std::conj(data_[r * dim_ + c]);
    }
  }
  return {dim_, std::move(out)};
}

cplx UnitaryMatrix::trace() const noexcept {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i];
  return t;
}

double UnitaryMatrix::unitarity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      // (U^dag U)_rc = sum_k conj(U_kr) U_kc
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim_; ++k) {
        acc += std::conj(data_[k * dim_ + r]) * data_[k * dim_ + c];
      }
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

UnitaryMatrix UnitaryMatrix::with_global_phase(double alpha) const {
  const cplx phase = std::polar(1.0, alpha);
  std::vector<cplx> out(data_);
  for (auto& z : out) z *= phase;
  return {dim_, std::move(out)};
}

std::vector<cplx> UnitaryMatrix::apply(const std::vector<cplx>& v) const {
  if (v.size() != dim_) {
    throw StructuralError("apply: vector length " + std::to_string(v.size()) +
                          " does not match dimension " + std::to_string(dim_));
  }
  std::vector<cplx> out(dim_, cplx{0.0, 0.0});
  for (std::size_t r = 0; r < dim_; ++r) {
    cplx acc{0.0, 0.0};
    for (std::size_t c = 0; c < dim_; ++c) acc += data_[r * dim_ + c] * v[c];
    out[r] = acc;
  }
  return out;
}

UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  check_same_dim(a, b, "multiply");
  const std::size_t n = a.dim();
  std::vector<cplx> out(n * n, cplx{0.0, 0.0});
  const auto& ad = a.entries();
  const auto& bd = b.entries();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ark = ad[r * n + k];
      if (ark == cplx{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < n; ++c) out[r * n + c] += ark * bd[k * n + c];
    }
  }
  return UnitaryMatrix::from_entries_unchecked(n, std::move(out));
}

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  const std::size_t n = na * nb;
  std::vector<cplx> out(n * n);
  for (std::size_t ar = 0; ar < na; ++ar) {
    for (std::size_t ac = 0; ac < na; ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < nb; ++br) {
        for (std::size_t bc = 0; bc < nb; ++bc) {
          out[(ar * nb + br) * n + (ac * nb + bc)] = s * b(br, bc);
        }
      }
    }
  }
  return UnitaryMatrix::from_entries_unchecked(n, std::move(out));
}

double max_abs_diff(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  check_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

std::string_view to_string(DistanceMetric m) noexcept {
  switch (m) {
    case DistanceMetric::PhaseInvariant:
      return "phase-invariant";
    case DistanceMetric::LiteralReal:
      return "literal-real";
  }
  return "unknown";
}

DistanceMetric parse_distance_metric(std::string_view name) {
  if (name == "phase-invariant") return DistanceMetric::PhaseInvariant;
  if (name == "literal-real") return DistanceMetric::LiteralReal;
  throw std::invalid_argument("unknown metric '" + std::string(name) +
                              "' (expected phase-invariant|literal-real)");
}

cplx trace_overlap(const UnitaryMatrix& v, const UnitaryMatrix& u) {
  check_same_dim(v, u, "trace_overlap");
  // Tr(V^dag U) = sum_{r,c} conj(V_rc) U_rc
  cplx acc{0.0, 0.0};
  const auto& vd = v.entries();
  const auto& ud = u.entries();
  for (std::size_t i = 0; i < vd.size(); ++i) acc += std::conj(vd[i]) * ud[i];
  return acc;
}

double distance(const UnitaryMatrix& u, const UnitaryMatrix& v,
                DistanceMetric metric) {
  const cplx tr = trace_overlap(v, u);
  const double dim = static_cast<double>(v.dim());
  double d = 0.0;
  switch (metric) {
    case DistanceMetric::PhaseInvariant:
      d = 1.0 - std::abs(tr) / dim;
      break;
    case DistanceMetric::LiteralReal:
      d = 1.0 - tr.real() / dim;
      break;
  }
  // Rounding can push an exact match a few ulps below zero.
  return d < 0.0 && d > -1e-14 ? 0.0 : d;
}

}  // namespace pqc
