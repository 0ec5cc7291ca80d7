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

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <vector>

#include "fmuod/errors.hpp"
#include "fmuod/indices.hpp"

namespace fmuod {

enum class CutoffRule { kTwoSided, kUpperOnly };

/// Boxplot whisker configuration. Shape always uses the upper whisker only; amplitude and
/// magnitude use both whiskers unless the table holds absolute-valued indices.
struct CutoffSpec {
  double whisker_factor = 1.5;
};

using IndexSet = std::vector<Eigen::Index>;

/// Sorted row indices flagged per outlier type.
struct FlagSet {
  IndexSet shape;
  IndexSet amplitude;
  IndexSet magnitude;
  IndexSet union_set;

  void rebuild_union() {
    IndexSet tmp;
    std::set_union(shape.begin(), shape.end(), amplitude.begin(), amplitude.end(),
                   std::back_inserter(tmp));
    union_set.clear();
    std::set_union(tmp.begin(), tmp.end(), magnitude.begin(), magnitude.end(),
                   std::back_inserter(union_set));
  }
};

template <typename Scalar>
struct Quartiles {
  Scalar q1;
  Scalar q3;
  Scalar iqr() const { return q3 - q1; }
};

/// First and third quartiles by linear interpolation between order statistics.
template <typename Derived>
Quartiles<typename Derived::Scalar> quartiles(const Eigen::DenseBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> sorted;
  sorted.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) sorted.push_back(values(i));
  std::sort(sorted.begin(), sorted.end());
  const auto at = [&](double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + static_cast<Scalar>(h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  return {at(0.25), at(0.75)};
}

/// Indices strictly beyond the whisker fences. Throws InsufficientData for fewer than 4 values.
template <typename Derived>
IndexSet boxplot_cutoff(const Eigen::DenseBase<Derived>& values, CutoffRule rule,
                        double factor = 1.5) {
  using Scalar = typename Derived::Scalar;
  if (values.size() < 4) {
    throw InsufficientData("boxplot cutoff needs at least 4 values, got " +
                           std::to_string(values.size()));
  }
  if (!(factor > 0.0)) throw InvalidConfig("whisker factor must be positive");
  const CurveVector<Scalar> evaluated = values.derived().reshaped();
  const Quartiles<Scalar> q = quartiles(evaluated);
  const Scalar upper = q.q3 + static_cast<Scalar>(factor) * q.iqr();
  const Scalar lower = q.q1 - static_cast<Scalar>(factor) * q.iqr();
  IndexSet out;
  for (Eigen::Index i = 0; i < evaluated.size(); ++i) {
    const Scalar v = evaluated(i);
    if (v > upper || (rule == CutoffRule::kTwoSided && v < lower)) out.push_back(i);
  }
  return out;
}

template <typename Scalar>
FlagSet classify_outliers(const IndexTable<Scalar>& table, const CutoffSpec& spec = {}) {
  if (table.size() == 0) throw InsufficientData("cannot classify an empty index table");
  const CutoffRule am_rule = table.variant == IndexVariant::kOriginalAbsolute
                                 ? CutoffRule::kUpperOnly
                                 : CutoffRule::kTwoSided;
  FlagSet flags;
  flags.shape = boxplot_cutoff(table.shape, CutoffRule::kUpperOnly, spec.whisker_factor);
  flags.amplitude = boxplot_cutoff(table.amplitude, am_rule, spec.whisker_factor);
  flags.magnitude = boxplot_cutoff(table.magnitude, am_rule, spec.whisker_factor);
  flags.rebuild_union();
  return flags;
}

}  // namespace fmuod
