// Copyright 2026 The fmuod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file indices.hpp
 *
 * @brief Shape, amplitude and magnitude outlyingness indices of curves against a reference.
 *
 * All indices are evaluated on the grid with uniform weights. For a candidate y and a
 * reference curve mu, with tilde denoting removal of the grid mean:
 *
 *   beta      = <y~, mu~> / <mu~, mu~>
 *   amplitude = beta - 1
 *   magnitude = mean(y) - beta * mean(mu)
 *   shape     = 1 - corr(y, mu)
 *
 * The reference is normally the pointwise median of the sample being screened.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fmuod/dataset.hpp"
#include "fmuod/errors.hpp"
#include "fmuod/grid.hpp"

namespace fmuod {

enum class Location { kMedian, kMean };

enum class IndexVariant {
  kStandard,
  /// Absolute amplitude and magnitude, both non-negative and right-skewed.
  kOriginalAbsolute,
};

template <typename Scalar>
struct IndexTriple {
  Scalar shape;
  Scalar amplitude;
  Scalar magnitude;
  Scalar beta;  // amplitude + 1
};

template <typename Scalar>
struct ReferenceCurve {
  CurveVector<Scalar> values;
  CurveVector<Scalar> centered;
};

/// Column-oriented index table aligned with the dataset rows.
template <typename Scalar>
struct IndexTable {
  CurveVector<Scalar> shape;
  CurveVector<Scalar> amplitude;
  CurveVector<Scalar> magnitude;
  IndexVariant variant = IndexVariant::kStandard;

  Eigen::Index size() const noexcept { return shape.size(); }

  IndexTriple<Scalar> row(Eigen::Index i) const {
    return {shape[i], amplitude[i], magnitude[i], amplitude[i] + Scalar(1)};
  }
};

namespace detail {

// A centered curve is treated as identically zero when every entry is within a few ulps
// of the magnitude of the uncentered values.
template <typename DerivedC, typename DerivedY>
bool is_flat(const Eigen::MatrixBase<DerivedC>& centered, const Eigen::MatrixBase<DerivedY>& raw) {
  using Scalar = typename DerivedC::Scalar;
  const Scalar scale = raw.cwiseAbs().maxCoeff();
  const Scalar tol = Scalar(16) * std::numeric_limits<Scalar>::epsilon() * scale *
                     static_cast<Scalar>(raw.size());
  return centered.cwiseAbs().maxCoeff() <= tol;
}

template <typename Scalar>
Scalar median_inplace(std::vector<Scalar>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  Scalar med = v[mid];
  if (v.size() % 2 == 0) {
    const Scalar lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    med = (lower + med) / Scalar(2);
  }
  return med;
}

}  // namespace detail

/// Subtracts the grid mean. Throws InvalidCurve for fewer than two points or non-finite input.
template <typename Derived>
CurveVector<typename Derived::Scalar> center_curve(const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  if (y.size() < 2) throw InvalidCurve("a curve needs at least 2 grid points");
  if (!y.allFinite()) throw InvalidCurve("curve contains non-finite values");
  CurveVector<Scalar> out = y.derived().reshaped();
  out.array() -= out.mean();
  return out;
}

/// Pointwise median (default) or mean of the curves.
template <typename Scalar>
ReferenceCurve<Scalar> reference_from_sample(const FunctionalDataset<Scalar>& data,
                                             Location location = Location::kMedian) {
  if (data.n() < 2) {
    throw InsufficientData("a reference curve needs at least 2 curves, got " +
                           std::to_string(data.n()));
  }
  ReferenceCurve<Scalar> ref;
  if (location == Location::kMean) {
    ref.values = data.values().colwise().mean().transpose();
  } else {
    ref.values.resize(data.k());
    std::vector<Scalar> column(static_cast<std::size_t>(data.n()));
    for (Eigen::Index j = 0; j < data.k(); ++j) {
      for (Eigen::Index i = 0; i < data.n(); ++i) column[static_cast<std::size_t>(i)] = data.values()(i, j);
      ref.values[j] = detail::median_inplace(column);
    }
  }
  ref.centered = center_curve(ref.values);
  return ref;
}

/// Indices of one candidate curve. Throws DegenerateReference when the reference is flat.
/// A flat candidate gets shape 1 (no correlation information) and amplitude -1.
template <typename Derived, typename Scalar = typename Derived::Scalar>
IndexTriple<Scalar> compute_indices(const Eigen::MatrixBase<Derived>& y,
                                    const ReferenceCurve<Scalar>& ref, const Grid& grid) {
  const Eigen::Index k = grid.size();
  if (y.size() != k || ref.values.size() != k) {
    throw InvalidCurve("curve length " + std::to_string(y.size()) + " and reference length " +
                       std::to_string(ref.values.size()) + " must both equal the grid size " +
                       std::to_string(k));
  }
  if (detail::is_flat(ref.centered, ref.values)) {
    throw DegenerateReference("reference curve is constant on the grid");
  }
  const CurveVector<Scalar> centered = center_curve(y);
  const Scalar inner = centered.dot(ref.centered);
  const Scalar ref_sq = ref.centered.squaredNorm();

  IndexTriple<Scalar> out;
  out.amplitude = inner / ref_sq - Scalar(1);
  out.beta = out.amplitude + Scalar(1);  // keeps beta == amplitude + 1 exact in floating point
  out.magnitude = y.mean() - out.beta * ref.values.mean();
  if (detail::is_flat(centered, y)) {
    out.shape = Scalar(1);
  } else {
    const Scalar rho = inner / (centered.norm() * std::sqrt(ref_sq));
    out.shape = Scalar(1) - std::clamp(rho, Scalar(-1), Scalar(1));
  }
  return out;
}

/// Row-wise compute_indices; the original variant takes absolute amplitude and magnitude.
template <typename Scalar>
IndexTable<Scalar> compute_index_table(const FunctionalDataset<Scalar>& data,
                                       const ReferenceCurve<Scalar>& ref,
                                       IndexVariant variant = IndexVariant::kStandard) {
  const Eigen::Index n = data.n();
  IndexTable<Scalar> table;
  table.variant = variant;
  table.shape.resize(n);
  table.amplitude.resize(n);
  table.magnitude.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const IndexTriple<Scalar> row = compute_indices(data.curve(i), ref, data.grid());
    table.shape[i] = row.shape;
    table.amplitude[i] = row.amplitude;
    table.magnitude[i] = row.magnitude;
  }
  if (variant == IndexVariant::kOriginalAbsolute) {
    table.amplitude = table.amplitude.cwiseAbs();
    table.magnitude = table.magnitude.cwiseAbs();
  }
  return table;
}

}  // namespace fmuod
