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
 * @file multivariate.hpp
 *
 * @brief Outlier detection for multivariate functional data.
 *
 * Three strategies reduce d-variate curves to univariate ones and reuse the univariate
 * indices and cutoffs:
 *
 * - marginal: screen each dimension separately and take the union of flags;
 * - stringed: concatenate the d dimensions of each curve into one long curve;
 * - projection: project onto L random unit directions, screen each projection, and flag
 *   curve i as type T when the fraction of projections voting T reaches tau_T.
 */

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

#include "fmuod/cutoffs.hpp"
#include "fmuod/dataset.hpp"

namespace fmuod {

struct SimulationSpec;

enum class OutlierType : int { kShape = 0, kAmplitude = 1, kMagnitude = 2 };
inline constexpr std::array<OutlierType, 3> kOutlierTypes = {
    OutlierType::kShape, OutlierType::kAmplitude, OutlierType::kMagnitude};

enum class Scaling { kMinMax, kNone };
enum class DetectionMethod { kMarginal, kStringed, kProjection };

/// Threshold sentinel for "flag when any projection voted": 1/L >= epsilon for every L.
inline constexpr double kAnyVote = std::numeric_limits<double>::epsilon();

/// L unit vectors in R^d, one per row.
struct DirectionSet {
  Eigen::MatrixXd vectors;
  std::uint64_t seed = 0;

  Eigen::Index count() const noexcept { return vectors.rows(); }
  Eigen::Index dim() const noexcept { return vectors.cols(); }
};

/// Per-projection boolean votes of each outlier type.
struct VoteMatrix {
  using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

  std::array<BoolMatrix, 3> votes;  // indexed by OutlierType, each n x L
  Eigen::MatrixXd proportions;      // n x 3, columns shape/amplitude/magnitude
  Eigen::Index degenerate_projections = 0;

  Eigen::Index n() const noexcept { return proportions.rows(); }
  Eigen::Index projections() const noexcept { return votes[0].cols(); }
  const BoolMatrix& of(OutlierType t) const { return votes[static_cast<std::size_t>(t)]; }
  /// Votes of any type, n x L.
  BoolMatrix any() const { return votes[0].array() || votes[1].array() || votes[2].array(); }
};

/// Expected false-positive vote proportions under an outlier-free model.
struct Baselines {
  double shape = 0.0;
  double amplitude = 0.0;
  double magnitude = 0.0;
  double combined = 0.0;

  double of(OutlierType t) const {
    switch (t) {
      case OutlierType::kShape: return shape;
      case OutlierType::kAmplitude: return amplitude;
      case OutlierType::kMagnitude: return magnitude;
    }
    return 0.0;
  }
};

/// Interval parameters of the adaptive threshold rule: tau_T lies in [gamma_T - eta_T, gamma_T].
struct ThresholdModel {
  std::array<double, 3> gamma = {0.7, 0.7, 0.7};
  std::array<double, 3> eta = {0.3, 0.4, 0.4};
};

struct ThresholdSelection {
  ThresholdModel model;
  Baselines baselines;
  std::array<double, 3> delta_type{};  // estimated excess proportion per type
  double delta_combined = 0.0;         // estimated excess proportion of any type
};

struct ThresholdTriple {
  double shape = 0.4;
  double amplitude = 0.3;
  double magnitude = 0.3;
  std::optional<ThresholdSelection> selection;

  double of(OutlierType t) const {
    switch (t) {
      case OutlierType::kShape: return shape;
      case OutlierType::kAmplitude: return amplitude;
      case OutlierType::kMagnitude: return magnitude;
    }
    return 1.0;
  }

  static ThresholdTriple recommended() { return {0.4, 0.3, 0.3, std::nullopt}; }
  static ThresholdTriple any_vote() { return {kAnyVote, kAnyVote, kAnyVote, std::nullopt}; }
};

struct OutlierReport {
  FlagSet flags;
  DetectionMethod method = DetectionMethod::kMarginal;
  CutoffSpec cutoff;
  // Projection methods only.
  std::optional<Eigen::MatrixXd> proportions;
  std::optional<ThresholdTriple> thresholds;
  Eigen::Index projections = 0;
  Eigen::Index degenerate_projections = 0;
  std::uint64_t seed = 0;
  // Stringing only.
  std::optional<Scaling> scaling;
};

/// Union of per-dimension univariate flags.
OutlierReport detect_marginal(const MultivariateFunctionalDataset& data, const CutoffSpec& spec = {});

/// Concatenates dimensions in input order into n curves of k*d points on an equidistant
/// grid spanning [0, d]. Min-max scaling maps each dimension's pooled range to [0, 1]; a
/// dimension with zero range maps to 0.
FunctionalDatasetd string_dimensions(const MultivariateFunctionalDataset& data, Scaling scale);

OutlierReport detect_stringed(const MultivariateFunctionalDataset& data, Scaling scale,
                              const CutoffSpec& spec = {});

/// Components drawn from U[-1, 1] and normalized; vector l uses its own stream keyed by
/// (seed, l). Draws with norm below 1e-8 are redrawn.
DirectionSet generate_directions(Eigen::Index d, Eigen::Index count, std::uint64_t seed);

/// Pointwise dot product of each curve with `direction`. Throws InvalidDirection on a
/// length mismatch.
FunctionalDatasetd project(const MultivariateFunctionalDataset& data,
                           const Eigen::Ref<const Eigen::VectorXd>& direction);

/// Screens every projection. A projection with a constant median curve casts no votes and
/// is counted in degenerate_projections.
VoteMatrix compute_votes(const MultivariateFunctionalDataset& data, const DirectionSet& directions,
                         const CutoffSpec& spec = {});

/// Flags i as type T when proportions(i, T) >= max(tau_T, kAnyVote).
FlagSet flags_from_votes(const VoteMatrix& votes, const ThresholdTriple& thresholds);

OutlierReport detect_projection(const MultivariateFunctionalDataset& data,
                                const DirectionSet& directions, const ThresholdTriple& thresholds,
                                const CutoffSpec& spec = {});

/// Adaptive thresholds from the votes' excess over the baselines:
///
///   delta_T = mean_{i,l} vote_T - B_T,  delta_C = mean_{i,l} vote_any - B_C,
///   tau_T   = gamma_T - eta_T * r  for r = delta_T / delta_C in [0, 1],
///             gamma_T - eta_T      for r > 1,
///             gamma_T              otherwise (including delta_C <= 0).
ThresholdTriple select_thresholds(const VoteMatrix& votes, const Baselines& baselines,
                                  const ThresholdModel& model = {});

/// Evaluates the threshold rule from an already populated selection record.
double threshold_from_selection(const ThresholdSelection& selection, OutlierType type);

/// Projection detection with thresholds chosen by select_thresholds on the same votes.
OutlierReport detect_projection_adaptive(const MultivariateFunctionalDataset& data,
                                         const DirectionSet& directions,
                                         const Baselines& baselines,
                                         const ThresholdModel& model = {},
                                         const CutoffSpec& spec = {});

/// Mean per-projection vote proportions on `reps` datasets from an outlier-free model.
/// Throws InvalidConfig when reps < 1 or the model contaminates.
Baselines estimate_baselines(const SimulationSpec& null_model, Eigen::Index reps,
                             Eigen::Index directions, std::uint64_t seed,
                             const CutoffSpec& spec = {});

}  // namespace fmuod
