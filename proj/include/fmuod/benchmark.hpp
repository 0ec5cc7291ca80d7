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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmuod/cutoffs.hpp"
#include "fmuod/multivariate.hpp"
#include "fmuod/simulation.hpp"

namespace fmuod {

enum class Method {
  kMarginal,           // FST_MAR
  kStringed,           // FST_STR
  kProjection,         // FST_PRJ: adaptive thresholds from baselines
  kProjectionFixed,    // FST_PRJ1: fixed thresholds, (0.4, 0.3, 0.3) by default
  kProjectionAnyVote,  // FST_PRJ2: any projection vote
};

enum class ReportScope { kUnion, kShapeOnly, kAmplitudeOnly, kMagnitudeOnly };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view text);
std::string_view scope_name(ReportScope s);
std::optional<ReportScope> parse_scope(std::string_view text);

struct MethodConfig {
  Method method = Method::kProjectionFixed;
  Eigen::Index directions = 60;
  ThresholdTriple thresholds = ThresholdTriple::recommended();  // FST_PRJ1 only
  std::optional<Baselines> baselines;                          // required by FST_PRJ
  ThresholdModel threshold_model;
  Scaling scaling = Scaling::kNone;
  CutoffSpec cutoff;

  void validate() const;
};

/// Runs the configured method on one multivariate dataset.
OutlierReport run_method(const MultivariateFunctionalDataset& data, const MethodConfig& config,
                         std::uint64_t direction_seed);

const IndexSet& scoped_flags(const FlagSet& flags, ReportScope scope);

struct RepetitionOutcome {
  std::optional<double> tpr;  // percent; empty when the dataset has no true outliers
  double fpr = 0.0;           // percent
  std::optional<double> f1;   // empty when the dataset has no true outliers
};

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t count = 0;
};

Summary summarize(const std::vector<double>& values);

struct BenchmarkResult {
  ModelId model = ModelId::kM0;
  Method method = Method::kProjectionFixed;
  ReportScope scope = ReportScope::kUnion;
  std::vector<RepetitionOutcome> repetitions;
  std::optional<Summary> tpr;
  Summary fpr;
  std::optional<Summary> f1;
  double runtime_seconds = 0.0;
};

/// TPR, FPR (percent) and F1 of `flagged` against the true outlier set of an n-curve sample.
RepetitionOutcome score_flags(const IndexSet& flagged, const IndexSet& truth, Eigen::Index n);

/// Anything mapping a labeled dataset and a per-repetition seed to flags.
using Detector = std::function<FlagSet(const LabeledDataset&, std::uint64_t)>;

/// Repetition r generates its data with seed derive_seed(seed, {r, 0}) and passes
/// derive_seed(seed, {r, 1}) to the detector. One result per requested scope.
std::vector<BenchmarkResult> run_benchmark(const SimulationSpec& spec, const Detector& detector,
                                           const std::vector<ReportScope>& scopes,
                                           Eigen::Index reps, std::uint64_t seed);

std::vector<BenchmarkResult> run_benchmark(const SimulationSpec& spec, const MethodConfig& method,
                                           const std::vector<ReportScope>& scopes,
                                           Eigen::Index reps, std::uint64_t seed);

BenchmarkResult run_benchmark(const SimulationSpec& spec, const MethodConfig& method,
                              ReportScope scope, Eigen::Index reps, std::uint64_t seed);

struct SweepRow {
  ThresholdTriple thresholds;
  std::vector<RepetitionOutcome> repetitions;
  Summary fpr;
  std::optional<Summary> tpr;
  std::optional<Summary> f1;  // empty for outlier-free models (FPR-only mode)
};

/// Fixed-threshold projection detection for every triple in `grid`, sharing the votes of
/// each repetition across the grid.
std::vector<SweepRow> threshold_sweep(const SimulationSpec& spec,
                                      const std::vector<ThresholdTriple>& grid, Eigen::Index reps,
                                      std::uint64_t seed, Eigen::Index directions = 60,
                                      const CutoffSpec& cutoff = {});

/// (0.2, 0.2, 0.2), (0.3, 0.3, 0.3), ..., (0.7, 0.7, 0.7).
std::vector<ThresholdTriple> uniform_threshold_grid();

}  // namespace fmuod
