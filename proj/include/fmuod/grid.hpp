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

#include <cstddef>

namespace fmuod {

/// Equidistant evaluation points shared by every curve of a dataset.
class Grid {
 public:
  /// k points from `lo` to `hi` inclusive. Throws InvalidConfig when k < 2 or hi <= lo.
  static Grid uniform(Eigen::Index k, double lo = 0.0, double hi = 1.0);

  /// Validates k >= 2, strictly increasing and equidistant within 1e-12.
  static Grid from_points(const Eigen::VectorXd& points);

  Eigen::Index size() const noexcept { return points_.size(); }
  double spacing() const noexcept { return spacing_; }
  const Eigen::VectorXd& points() const noexcept { return points_; }
  double operator[](Eigen::Index j) const { return points_[j]; }

 private:
  Grid(Eigen::VectorXd points, double spacing) : points_(std::move(points)), spacing_(spacing) {}

  Eigen::VectorXd points_;
  double spacing_;
};

}  // namespace fmuod
