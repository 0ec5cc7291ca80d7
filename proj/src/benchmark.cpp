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

#include "fmuod/benchmark.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cctype>
#include <cmath>
#include <iterator>
#include <string>

#include "fmuod/errors.hpp"
#include "fmuod/parallel.hpp"
#include "fmuod/random.hpp"

namespace fmuod {

namespace {

std::string canonical(std::string_view text) {
  std::string s;
  for (const char c : text) {
    s.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return s;
}

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodNames = {{
    {Method::kMarginal, "FST_MAR"},
    {Method::kStringed, "FST_STR"},
    {Method::kProjection, "FST_PRJ"},
    {Method::kProjectionFixed, "FST_PRJ1"},
    {Method::kProjectionAnyVote, "FST_PRJ2"},
}};

constexpr std::array<std::pair<ReportScope, std::string_view>, 4> kScopeNames = {{
    {ReportScope::kUnion, "union"},
    {ReportScope::kShapeOnly, "shape_only"},
    {ReportScope::kAmplitudeOnly, "amplitude_only"},
    {ReportScope::kMagnitudeOnly, "magnitude_only"},
}};

std::size_t intersection_size(const IndexSet& a, const IndexSet& b) {
  IndexSet common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.size();
}

std::optional<Summary> summarize_optional(const std::vector<RepetitionOutcome>& reps,
                                          std::optional<double> RepetitionOutcome::*field) {
  std::vector<double> values;
  for (const RepetitionOutcome& r : reps) {
    if (r.*field) values.push_back(*(r.*field));
  }
  if (values.empty()) return std::nullopt;
  return summarize(values);
}

Summary summarize_fpr(const std::vector<RepetitionOutcome>& reps) {
  std::vector<double> values;
  values.reserve(reps.size());
  for (const RepetitionOutcome& r : reps) values.push_back(r.fpr);
  return summarize(values);
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [id, name] : kMethodNames) {
    if (id == m) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view text) {
  const std::string key = canonical(text);
  for (const auto& [id, name] : kMethodNames) {
    if (name == key) return id;
  }
  return std::nullopt;
}

std::string_view scope_name(ReportScope s) {
  for (const auto& [id, name] : kScopeNames) {
    if (id == s) return name;
  }
  return "unknown";
}

std::optional<ReportScope> parse_scope(std::string_view text) {
  std::string key;
  for (const char c : text) {
    key.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "sh" || key == "shape") key = "shape_only";
  if (key == "am" || key == "amplitude") key = "amplitude_only";
  if (key == "mg" || key == "magnitude") key = "magnitude_only";
  for (const auto& [id, name] : kScopeNames) {
    if (name == key) return id;
  }
  return std::nullopt;
}

void MethodConfig::validate() const {
  const bool projection = method == Method::kProjection || method == Method::kProjectionFixed ||
                          method == Method::kProjectionAnyVote;
  if (projection && directions < 1) throw InvalidConfig("projection methods need directions >= 1");
  if (method == Method::kProjection && !baselines) {
    throw InvalidConfig("FST_PRJ needs baselines (estimate them with the baselines command)");
  }
  if (method == Method::kProjectionFixed) {
    for (const OutlierType t : kOutlierTypes) {
      const double tau = thresholds.of(t);
      if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidConfig("thresholds must lie in [0, 1]");
    }
  }
  if (!(cutoff.whisker_factor > 0.0)) throw InvalidConfig("whisker factor must be positive");
}

OutlierReport run_method(const MultivariateFunctionalDataset& data, const MethodConfig& config,
                         std::uint64_t direction_seed) {
  config.validate();
  switch (config.method) {
    case Method::kMarginal:
      return detect_marginal(data, config.cutoff);
    case Method::kStringed:
      return detect_stringed(data, config.scaling, config.cutoff);
    case Method::kProjection:
      return detect_projection_adaptive(data,
                                        generate_directions(data.d(), config.directions, direction_seed),
                                        *config.baselines, config.threshold_model, config.cutoff);
    case Method::kProjectionFixed:
      return detect_projection(data, generate_directions(data.d(), config.directions, direction_seed),
                               config.thresholds, config.cutoff);
    case Method::kProjectionAnyVote:
      return detect_projection(data, generate_directions(data.d(), config.directions, direction_seed),
                               ThresholdTriple::any_vote(), config.cutoff);
  }
  throw InvalidConfig("unknown method");
}

const IndexSet& scoped_flags(const FlagSet& flags, ReportScope scope) {
  switch (scope) {
    case ReportScope::kShapeOnly: return flags.shape;
    case ReportScope::kAmplitudeOnly: return flags.amplitude;
    case ReportScope::kMagnitudeOnly: return flags.magnitude;
    case ReportScope::kUnion: break;
  }
  return flags.union_set;
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

RepetitionOutcome score_flags(const IndexSet& flagged, const IndexSet& truth, Eigen::Index n) {
  const std::size_t hits = intersection_size(flagged, truth);
  const std::size_t false_hits = flagged.size() - hits;
  const auto negatives = static_cast<double>(n) - static_cast<double>(truth.size());

  RepetitionOutcome out;
  out.fpr = negatives > 0.0 ? 100.0 * static_cast<double>(false_hits) / negatives : 0.0;
  if (!truth.empty()) {
    const double recall = static_cast<double>(hits) / static_cast<double>(truth.size());
    const double precision =
        flagged.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(flagged.size());
    out.tpr = 100.0 * recall;
    out.f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  }
  return out;
}

std::vector<BenchmarkResult> run_benchmark(const SimulationSpec& spec, const Detector& detector,
                                           const std::vector<ReportScope>& scopes,
                                           Eigen::Index reps, std::uint64_t seed) {
  if (reps < 1) throw InvalidConfig("benchmark needs reps >= 1");
  if (scopes.empty()) throw InvalidConfig("benchmark needs at least one report scope");
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  const auto count = static_cast<std::size_t>(reps);
  std::vector<std::vector<RepetitionOutcome>> outcomes(scopes.size(),
                                                       std::vector<RepetitionOutcome>(count));
  parallel_for(count, [&](std::size_t r) {
    SimulationSpec spec_r = spec;
    spec_r.seed = derive_seed(seed, {r, 0});
    const LabeledDataset sample = generate(spec_r);
    const FlagSet flags = detector(sample, derive_seed(seed, {r, 1}));
    for (std::size_t s = 0; s < scopes.size(); ++s) {
      outcomes[s][r] = score_flags(scoped_flags(flags, scopes[s]), sample.outliers, sample.data.n());
    }
  });

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<BenchmarkResult> results;
  for (std::size_t s = 0; s < scopes.size(); ++s) {
    BenchmarkResult res;
    res.model = spec.model;
    res.scope = scopes[s];
    res.repetitions = std::move(outcomes[s]);
    res.tpr = summarize_optional(res.repetitions, &RepetitionOutcome::tpr);
    res.fpr = summarize_fpr(res.repetitions);
    res.f1 = summarize_optional(res.repetitions, &RepetitionOutcome::f1);
    res.runtime_seconds = elapsed;
    results.push_back(std::move(res));
  }
  return results;
}

std::vector<BenchmarkResult> run_benchmark(const SimulationSpec& spec, const MethodConfig& method,
                                           const std::vector<ReportScope>& scopes,
                                           Eigen::Index reps, std::uint64_t seed) {
  method.validate();
  const Detector detector = [&method](const LabeledDataset& sample, std::uint64_t dir_seed) {
    return run_method(sample.data, method, dir_seed).flags;
  };
  std::vector<BenchmarkResult> results = run_benchmark(spec, detector, scopes, reps, seed);
  for (BenchmarkResult& r : results) r.method = method.method;
  return results;
}

BenchmarkResult run_benchmark(const SimulationSpec& spec, const MethodConfig& method,
                              ReportScope scope, Eigen::Index reps, std::uint64_t seed) {
  return std::move(run_benchmark(spec, method, std::vector<ReportScope>{scope}, reps, seed).front());
}

std::vector<SweepRow> threshold_sweep(const SimulationSpec& spec,
                                      const std::vector<ThresholdTriple>& grid, Eigen::Index reps,
                                      std::uint64_t seed, Eigen::Index directions,
                                      const CutoffSpec& cutoff) {
  if (grid.empty()) throw InvalidConfig("threshold sweep needs at least one threshold triple");
  if (reps < 1) throw InvalidConfig("threshold sweep needs reps >= 1");
  if (directions < 1) throw InvalidConfig("threshold sweep needs directions >= 1");
  for (const ThresholdTriple& q : grid) {
    for (const OutlierType t : kOutlierTypes) {
      if (!(q.of(t) >= 0.0 && q.of(t) <= 1.0)) throw InvalidConfig("thresholds must lie in [0, 1]");
    }
  }
  spec.validate();

  const auto count = static_cast<std::size_t>(reps);
  std::vector<std::vector<RepetitionOutcome>> outcomes(grid.size(),
                                                       std::vector<RepetitionOutcome>(count));
  parallel_for(count, [&](std::size_t r) {
    SimulationSpec spec_r = spec;
    spec_r.seed = derive_seed(seed, {r, 0});
    const LabeledDataset sample = generate(spec_r);
    const DirectionSet dirs =
        generate_directions(sample.data.d(), directions, derive_seed(seed, {r, 1}));
    const VoteMatrix votes = compute_votes(sample.data, dirs, cutoff);
    for (std::size_t q = 0; q < grid.size(); ++q) {
      const FlagSet flags = flags_from_votes(votes, grid[q]);
      outcomes[q][r] = score_flags(flags.union_set, sample.outliers, sample.data.n());
    }
  });

  std::vector<SweepRow> rows;
  for (std::size_t q = 0; q < grid.size(); ++q) {
    SweepRow row;
    row.thresholds = grid[q];
    row.fpr = summarize_fpr(outcomes[q]);
    row.tpr = summarize_optional(outcomes[q], &RepetitionOutcome::tpr);
    row.f1 = summarize_optional(outcomes[q], &RepetitionOutcome::f1);
    row.repetitions = std::move(outcomes[q]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ThresholdTriple> uniform_threshold_grid() {
  std::vector<ThresholdTriple> grid;
  for (int step = 2; step <= 7; ++step) {
    const double tau = static_cast<double>(step) / 10.0;
    grid.push_back({tau, tau, tau, std::nullopt});
  }
  return grid;
}

}  // namespace fmuod
