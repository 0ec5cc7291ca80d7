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
 * @file simulation.hpp
 *
 * @brief Trivariate benchmark models built from a truncated multivariate Karhunen-Loeve
 * expansion,
 *
 *   Y_i(t) = mu(t) + u_i(t) + sum_m rho_im psi_m(t) + eps(t),
 *
 * with rho_im ~ N(0, nu_m), nu_m = (M + 1 - m) / M, eps(t) white noise with per-dimension
 * standard deviation drawn once per dataset from U[0.1, 0.3], and psi_m a Fourier basis on
 * [0, d] cut into d unit pieces.
 *
 * Model catalogue (main / contaminated):
 *
 *  M0  mu0 = (4t, 30t(1-t)^1.5, 5(t-1)^2), no outliers
 *  M1  mu0 / mu0 + 8 W_j, W_j = +-1                    (persistent magnitude)
 *  M2  muS / muS + 8 W_j 1{t in [T, T + 0.1]}, T ~ U[0, 0.9]   (non-persistent magnitude)
 *  M3  muS / (5 sin 2pi(t-0.3), 5 cos 2pi(t-0.2), 5(0.1-t)^2)  (shape)
 *  M4  muS + rho_j, rho_j ~ U[-2.1, 2.1] / muS + (2 sin 4pi t, 2 cos 4pi t, 2 cos 8pi t)
 *  M5  muS / muS + ((2+R_1) muS_1, (2+R_2) muS_2, (2+R_3) muS_3 - 6), R_j ~ Exp(2)
 *  M6  muS + (8t sin pi t, t cos pi t, 6 sin 2pi t - 3) /
 *      muS + (10t sin pi t, 11t cos pi t, 10 sin 2pi t - 6)
 *
 * with muS = (5 sin 2pi t, 5 cos 2pi t, 5(t-1)^2). The variants restrict contamination to
 * some dimensions; the affected sets below are an inferred convention:
 * M1_2 {1}, M2_2 {1}, M2_3 {1,2}, M3_2 {1,2}, M3_3 {2}, M5_2 {1,2}.
 */

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmuod/cutoffs.hpp"
#include "fmuod/dataset.hpp"
#include "fmuod/random.hpp"

namespace fmuod {

enum class ModelId { kM0, kM1, kM2, kM3, kM4, kM5, kM6, kM1_2, kM2_2, kM2_3, kM3_2, kM3_3, kM5_2 };

inline constexpr std::array<ModelId, 13> kAllModels = {
    ModelId::kM0,   ModelId::kM1,   ModelId::kM2,   ModelId::kM3,   ModelId::kM4,
    ModelId::kM5,   ModelId::kM6,   ModelId::kM1_2, ModelId::kM2_2, ModelId::kM2_3,
    ModelId::kM3_2, ModelId::kM3_3, ModelId::kM5_2};

std::string_view model_name(ModelId id);

/// Accepts "M1_2", "m1.2", "1.2", "M0", "0", ...
std::optional<ModelId> parse_model(std::string_view text);

bool model_contaminates(ModelId id);

struct SimulationSpec {
  ModelId model = ModelId::kM0;
  Eigen::Index n = 100;
  Eigen::Index k = 50;
  Eigen::Index d = 3;
  Eigen::Index basis_count = 9;
  double contamination_rate = 0.1;
  std::uint64_t seed = 0;

  /// Throws InvalidConfig on any violated constraint.
  void validate() const;
  Eigen::Index outlier_count() const;
};

/// Draws made for one contaminated curve. Unused fields stay NaN.
struct OutlierParams {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  Eigen::Index index = 0;
  std::array<double, 3> sign = {kUnset, kUnset, kUnset};  // W_j, M1/M2 families
  double window_start = kUnset;                           // T, M2 family
  std::array<double, 3> rate = {kUnset, kUnset, kUnset};  // R_j, M5 family
};

struct LabeledDataset {
  MultivariateFunctionalDataset data;
  IndexSet outliers;  // sorted
  std::vector<OutlierParams> params;
  std::array<double, 3> noise_sd{};
};

/// M basis functions, each a d x k matrix: Fourier function m on [0, d] restricted to
/// [j, j+1] and shifted back to [0, 1] gives row j. Orthonormal under the summed inner
/// product over dimensions.
std::vector<Eigen::MatrixXd> multivariate_eigenfunctions(Eigen::Index basis_count, Eigen::Index d,
                                                         const Grid& grid);

/// Linearly decreasing variances (M + 1 - m) / M, m = 1..M.
Eigen::VectorXd kl_eigenvalues(Eigen::Index basis_count);

/// One vector of independent N(0, eigenvalues[m]) scores.
Eigen::VectorXd draw_scores(Engine& engine, const Eigen::VectorXd& eigenvalues);

/// Main-model mean of `model` as a d x k matrix (excludes per-curve random shifts).
Eigen::MatrixXd main_mean(ModelId model, const Grid& grid);

/// Dimensions (0-based) whose contaminated curves differ from the main model.
std::vector<Eigen::Index> contaminated_dimensions(ModelId model);

/// Generates a labeled dataset. Streams are keyed by (seed, purpose, curve), so the random
/// KL and noise part of curve i depends only on (seed, i); the same seed with a different
/// contamination rate reproduces the clean curves exactly.
LabeledDataset generate(const SimulationSpec& spec);

}  // namespace fmuod
