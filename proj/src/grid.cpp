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

#include "fmuod/grid.hpp"

#include <cmath>
#include <string>

#include "fmuod/errors.hpp"

namespace fmuod {

namespace {
constexpr double kSpacingTolerance = 1e-12;
}

Grid Grid::uniform(Eigen::Index k, double lo, double hi) {
  if (k < 2) throw InvalidConfig("grid needs at least 2 points, got " + std::to_string(k));
  if (!(hi > lo)) throw InvalidConfig("grid upper bound must exceed lower bound");
  const double spacing = (hi - lo) / static_cast<double>(k - 1);
  Eigen::VectorXd points(k);
  for (Eigen::Index j = 0; j < k; ++j) points[j] = lo + spacing * static_cast<double>(j);
  points[k - 1] = hi;
  return Grid(std::move(points), spacing);
}

Grid Grid::from_points(const Eigen::VectorXd& points) {
  const Eigen::Index k = points.size();
  if (k < 2) throw InvalidConfig("grid needs at least 2 points, got " + std::to_string(k));
  if (!points.allFinite()) throw InvalidConfig("grid points must be finite");
  const double spacing = (points[k - 1] - points[0]) / static_cast<double>(k - 1);
  if (!(spacing > 0.0)) throw InvalidConfig("grid points must be strictly increasing");
  for (Eigen::Index j = 1; j < k; ++j) {
    const double step = points[j] - points[j - 1];
    if (!(step > 0.0)) throw InvalidConfig("grid points must be strictly increasing");
    if (std::abs(step - spacing) > kSpacingTolerance) {
      throw InvalidConfig("grid points are not equidistant at index " + std::to_string(j));
    }
  }
  return Grid(points, spacing);
}

}  // namespace fmuod
