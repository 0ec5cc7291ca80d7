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

#include <string>
#include <utility>
#include <vector>

#include "fmuod/errors.hpp"
#include "fmuod/grid.hpp"

namespace fmuod {

template <typename Scalar>
using CurveMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CurveVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// n univariate curves on a shared grid; row i is curve i.
template <typename Scalar>
class FunctionalDataset {
 public:
  FunctionalDataset(CurveMatrix<Scalar> values, Grid grid)
      : values_(std::move(values)), grid_(std::move(grid)) {
    if (values_.cols() != grid_.size()) {
      throw InvalidCurve("dataset has " + std::to_string(values_.cols()) +
                         " columns but the grid has " + std::to_string(grid_.size()) + " points");
    }
    if (!values_.allFinite()) throw InvalidCurve("dataset contains non-finite values");
  }

  Eigen::Index n() const noexcept { return values_.rows(); }
  Eigen::Index k() const noexcept { return values_.cols(); }
  const CurveMatrix<Scalar>& values() const noexcept { return values_; }
  const Grid& grid() const noexcept { return grid_; }
  auto curve(Eigen::Index i) const { return values_.row(i); }

 private:
  CurveMatrix<Scalar> values_;
  Grid grid_;
};

using FunctionalDatasetd = FunctionalDataset<double>;

/// n curves x k grid points x d dimensions, stored as d margins of shape n x k. Dimension
/// names default to dim_1, ..., dim_d.
class MultivariateFunctionalDataset {
 public:
  MultivariateFunctionalDataset(std::vector<Eigen::MatrixXd> margins, Grid grid,
                                std::vector<std::string> dim_names = {});

  Eigen::Index n() const noexcept { return margins_.front().rows(); }
  Eigen::Index k() const noexcept { return grid_.size(); }
  Eigen::Index d() const noexcept { return static_cast<Eigen::Index>(margins_.size()); }

  const Eigen::MatrixXd& margin(Eigen::Index j) const { return margins_[static_cast<std::size_t>(j)]; }
  const std::vector<Eigen::MatrixXd>& margins() const noexcept { return margins_; }
  const Grid& grid() const noexcept { return grid_; }
  const std::vector<std::string>& dim_names() const noexcept { return dim_names_; }

  /// Margin j as a univariate dataset.
  FunctionalDatasetd marginal(Eigen::Index j) const { return {margin(j), grid_}; }

 private:
  std::vector<Eigen::MatrixXd> margins_;
  Grid grid_;
  std::vector<std::string> dim_names_;
};

}  // namespace fmuod
