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

// Checks of the simulation generator against closed forms.

#pragma once

#include <cmath>
#include <cstdint>

#include "fmuod/random.hpp"
#include "fmuod/simulation.hpp"

namespace fmuod::testing {

/// Trapezoid rule on an equidistant grid.
inline double trapezoid(const Eigen::Ref<const Eigen::RowVectorXd>& f, double h) {
  const Eigen::Index k = f.size();
  return h * (f.sum() - 0.5 * (f[0] + f[k - 1]));
}

/// Gram matrix of the multivariate eigenfunctions under sum_j int psi_m^j psi_m'^j.
inline Eigen::MatrixXd eigenfunction_gram(Eigen::Index basis_count, Eigen::Index d, Eigen::Index k) {
  const Grid grid = Grid::uniform(k);
  const std::vector<Eigen::MatrixXd> psi = multivariate_eigenfunctions(basis_count, d, grid);
  Eigen::MatrixXd gram(basis_count, basis_count);
  for (Eigen::Index a = 0; a < basis_count; ++a) {
    for (Eigen::Index b = 0; b < basis_count; ++b) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        s += trapezoid(psi[static_cast<std::size_t>(a)].row(j).cwiseProduct(psi[static_cast<std::size_t>(b)].row(j)),
                       grid.spacing());
      }
      gram(a, b) = s;
    }
  }
  return gram;
}

/// Largest relative deviation of the empirical score variances from the eigenvalues.
inline double score_variance_deviation(std::uint64_t seed, int draws, Eigen::Index basis_count = 9) {
  const Eigen::VectorXd nu = kl_eigenvalues(basis_count);
  Engine engine = make_engine(seed, {0});
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(basis_count);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(basis_count);
  for (int r = 0; r < draws; ++r) {
    const Eigen::VectorXd s = draw_scores(engine, nu);
    sum += s;
    sum_sq += s.cwiseProduct(s);
  }
  const double n = draws;
  double worst = 0.0;
  for (Eigen::Index m = 0; m < basis_count; ++m) {
    const double var = (sum_sq[m] - sum[m] * sum[m] / n) / (n - 1.0);
    worst = std::max(worst, std::abs(var / nu[m] - 1.0));
  }
  return worst;
}

struct WindowCheck {
  int outliers = 0;
  int outside_nonzero = 0;   // grid points outside [T, T + 0.1] with a nonzero shift
  int inside_wrong = 0;      // grid points inside with a shift other than 8 W_j
  int clean_nonzero = 0;     // grid points of non-outlier curves that changed
};

/// Regenerates a Model-2 family dataset with alpha = 0 and the same seed; the difference
/// isolates the contamination term.
inline WindowCheck model2_window(ModelId model, std::uint64_t seed, Eigen::Index n = 100) {
  SimulationSpec spec;
  spec.model = model;
  spec.n = n;
  spec.seed = seed;
  const LabeledDataset dirty = generate(spec);
  spec.contamination_rate = 0.0;
  const LabeledDataset clean = generate(spec);
  const Grid& grid = dirty.data.grid();

  WindowCheck out;
  std::vector<bool> is_outlier(static_cast<std::size_t>(n), false);
  for (const OutlierParams& p : dirty.params) {
    ++out.outliers;
    is_outlier[static_cast<std::size_t>(p.index)] = true;
    for (Eigen::Index j = 0; j < dirty.data.d(); ++j) {
      for (Eigen::Index t = 0; t < grid.size(); ++t) {
        const double diff = dirty.data.margin(j)(p.index, t) - clean.data.margin(j)(p.index, t);
        const bool inside = grid[t] >= p.window_start && grid[t] <= p.window_start + 0.1;
        const bool affected = std::isfinite(p.sign[static_cast<std::size_t>(j)]);
        if (inside && affected) {
          if (std::abs(diff - 8.0 * p.sign[static_cast<std::size_t>(j)]) > 1e-12) ++out.inside_wrong;
        } else if (diff != 0.0) {
          ++out.outside_nonzero;
        }
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (is_outlier[static_cast<std::size_t>(i)]) continue;
    for (Eigen::Index j = 0; j < dirty.data.d(); ++j) {
      if (dirty.data.margin(j).row(i) != clean.data.margin(j).row(i)) ++out.clean_nonzero;
    }
  }
  return out;
}

}  // namespace fmuod::testing
