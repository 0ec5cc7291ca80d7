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

#include "fmuod/dataset.hpp"

namespace fmuod {

MultivariateFunctionalDataset::MultivariateFunctionalDataset(std::vector<Eigen::MatrixXd> margins,
                                                             Grid grid,
                                                             std::vector<std::string> dim_names)
    : margins_(std::move(margins)), grid_(std::move(grid)), dim_names_(std::move(dim_names)) {
  if (margins_.empty()) throw InvalidCurve("a multivariate dataset needs at least one dimension");
  const Eigen::Index n = margins_.front().rows();
  for (std::size_t j = 0; j < margins_.size(); ++j) {
    const Eigen::MatrixXd& m = margins_[j];
    if (m.rows() != n || m.cols() != grid_.size()) {
      throw InvalidCurve("dimension " + std::to_string(j + 1) + " is " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(grid_.size()));
    }
    if (!m.allFinite()) {
      throw InvalidCurve("dimension " + std::to_string(j + 1) + " contains non-finite values");
    }
  }
  if (!dim_names_.empty() && dim_names_.size() != margins_.size()) {
    throw InvalidCurve("got " + std::to_string(dim_names_.size()) + " dimension names for " +
                       std::to_string(margins_.size()) + " dimensions");
  }
  if (dim_names_.empty()) {
    for (std::size_t j = 0; j < margins_.size(); ++j) dim_names_.push_back("dim_" + std::to_string(j + 1));
  }
}

}  // namespace fmuod
