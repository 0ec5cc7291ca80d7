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

#include "fmuod/multivariate.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "fmuod/indices.hpp"
#include "fmuod/parallel.hpp"
#include "fmuod/random.hpp"
#include "fmuod/simulation.hpp"

namespace fmuod {

namespace {

constexpr double kMinDirectionNorm = 1e-8;

void merge_into(IndexSet& target, const IndexSet& extra) {
  IndexSet merged;
  std::set_union(target.begin(), target.end(), extra.begin(), extra.end(),
                 std::back_inserter(merged));
  target = std::move(merged);
}

FlagSet screen(const FunctionalDatasetd& data, const CutoffSpec& spec) {
  const ReferenceCurve<double> ref = reference_from_sample(data, Location::kMedian);
  return classify_outliers(compute_index_table(data, ref), spec);
}

void require_curves(const MultivariateFunctionalDataset& data) {
  if (data.n() < 4) {
    throw InsufficientData("outlier detection needs at least 4 curves, got " +
                           std::to_string(data.n()));
  }
}

}  // namespace

OutlierReport detect_marginal(const MultivariateFunctionalDataset& data, const CutoffSpec& spec) {
  require_curves(data);
  OutlierReport report;
  report.method = DetectionMethod::kMarginal;
  report.cutoff = spec;
  for (Eigen::Index j = 0; j < data.d(); ++j) {
    const FlagSet margin = screen(data.marginal(j), spec);
    merge_into(report.flags.shape, margin.shape);
    merge_into(report.flags.amplitude, margin.amplitude);
    merge_into(report.flags.magnitude, margin.magnitude);
  }
  report.flags.rebuild_union();
  return report;
}

FunctionalDatasetd string_dimensions(const MultivariateFunctionalDataset& data, Scaling scale) {
  const Eigen::Index k = data.k();
  const Eigen::Index d = data.d();
  Eigen::MatrixXd out(data.n(), k * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    auto block = out.middleCols(j * k, k);
    const Eigen::MatrixXd& margin = data.margin(j);
    if (scale == Scaling::kNone) {
      block = margin;
      continue;
    }
    const double lo = margin.minCoeff();
    const double range = margin.maxCoeff() - lo;
    if (range > 0.0) {
      block = (margin.array() - lo) / range;
    } else {
      block.setZero();
    }
  }
  return {std::move(out), Grid::uniform(k * d, 0.0, static_cast<double>(d))};
}

OutlierReport detect_stringed(const MultivariateFunctionalDataset& data, Scaling scale,
                              const CutoffSpec& spec) {
  require_curves(data);
  OutlierReport report;
  report.method = DetectionMethod::kStringed;
  report.cutoff = spec;
  report.scaling = scale;
  report.flags = screen(string_dimensions(data, scale), spec);
  return report;
}

DirectionSet generate_directions(Eigen::Index d, Eigen::Index count, std::uint64_t seed) {
  if (d < 1) throw InvalidConfig("directions need d >= 1");
  if (count < 1) throw InvalidConfig("need at least one projection direction");
  DirectionSet set;
  set.seed = seed;
  set.vectors.resize(count, d);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (Eigen::Index l = 0; l < count; ++l) {
    Engine engine = make_engine(seed, {static_cast<std::uint64_t>(l)});
    Eigen::VectorXd v(d);
    do {
      for (Eigen::Index m = 0; m < d; ++m) v[m] = unit(engine);
    } while (v.norm() < kMinDirectionNorm);
    set.vectors.row(l) = v.normalized().transpose();
  }
  return set;
}

FunctionalDatasetd project(const MultivariateFunctionalDataset& data,
                           const Eigen::Ref<const Eigen::VectorXd>& direction) {
  if (direction.size() != data.d()) {
    throw InvalidDirection("direction has " + std::to_string(direction.size()) +
                           " components but the data has " + std::to_string(data.d()) +
                           " dimensions");
  }
  if (!direction.allFinite()) throw InvalidDirection("direction contains non-finite values");
  Eigen::MatrixXd out = direction[0] * data.margin(0);
  for (Eigen::Index m = 1; m < data.d(); ++m) out += direction[m] * data.margin(m);
  return {std::move(out), data.grid()};
}

VoteMatrix compute_votes(const MultivariateFunctionalDataset& data, const DirectionSet& directions,
                         const CutoffSpec& spec) {
  require_curves(data);
  const Eigen::Index n = data.n();
  const Eigen::Index count = directions.count();
  if (count < 1) throw InvalidConfig("need at least one projection direction");
  if (directions.dim() != data.d()) {
    throw InvalidDirection("directions have " + std::to_string(directions.dim()) +
                           " components but the data has " + std::to_string(data.d()) +
                           " dimensions");
  }

  VoteMatrix vm;
  for (auto& v : vm.votes) v = VoteMatrix::BoolMatrix::Constant(n, count, false);
  std::vector<char> degenerate(static_cast<std::size_t>(count), 0);

  parallel_for(static_cast<std::size_t>(count), [&](std::size_t slot) {
    const auto l = static_cast<Eigen::Index>(slot);
    FlagSet flags;
    try {
      flags = screen(project(data, directions.vectors.row(l).transpose()), spec);
    } catch (const DegenerateReference&) {
      degenerate[slot] = 1;
      return;
    }
    // Each task writes only column l.
    for (const Eigen::Index i : flags.shape) vm.votes[0](i, l) = true;
    for (const Eigen::Index i : flags.amplitude) vm.votes[1](i, l) = true;
    for (const Eigen::Index i : flags.magnitude) vm.votes[2](i, l) = true;
  });

  vm.degenerate_projections = std::count(degenerate.begin(), degenerate.end(), 1);
  vm.proportions.resize(n, 3);
  for (std::size_t t = 0; t < 3; ++t) {
    vm.proportions.col(static_cast<Eigen::Index>(t)) =
        vm.votes[t].cast<double>().rowwise().sum() / static_cast<double>(count);
  }
  return vm;
}

FlagSet flags_from_votes(const VoteMatrix& votes, const ThresholdTriple& thresholds) {
  FlagSet flags;
  IndexSet* targets[3] = {&flags.shape, &flags.amplitude, &flags.magnitude};
  for (const OutlierType t : kOutlierTypes) {
    const auto col = static_cast<Eigen::Index>(t);
    const double tau = std::max(thresholds.of(t), kAnyVote);
    for (Eigen::Index i = 0; i < votes.n(); ++i) {
      if (votes.proportions(i, col) >= tau) targets[col]->push_back(i);
    }
  }
  flags.rebuild_union();
  return flags;
}

OutlierReport detect_projection(const MultivariateFunctionalDataset& data,
                                const DirectionSet& directions, const ThresholdTriple& thresholds,
                                const CutoffSpec& spec) {
  const VoteMatrix votes = compute_votes(data, directions, spec);
  OutlierReport report;
  report.method = DetectionMethod::kProjection;
  report.cutoff = spec;
  report.flags = flags_from_votes(votes, thresholds);
  report.proportions = votes.proportions;
  report.thresholds = thresholds;
  report.projections = directions.count();
  report.degenerate_projections = votes.degenerate_projections;
  report.seed = directions.seed;
  return report;
}

double threshold_from_selection(const ThresholdSelection& selection, OutlierType type) {
  const auto t = static_cast<std::size_t>(type);
  const double gamma = selection.model.gamma[t];
  const double eta = selection.model.eta[t];
  if (!(selection.delta_combined > 0.0)) return gamma;
  const double ratio = selection.delta_type[t] / selection.delta_combined;
  if (ratio > 1.0) return gamma - eta;
  if (ratio >= 0.0) return gamma - eta * ratio;
  return gamma;
}

ThresholdTriple select_thresholds(const VoteMatrix& votes, const Baselines& baselines,
                                  const ThresholdModel& model) {
  for (std::size_t t = 0; t < 3; ++t) {
    const double g = model.gamma[t];
    const double e = model.eta[t];
    if (!(g >= 0.0 && g <= 1.0 && e >= 0.0 && e <= 1.0 && g >= e)) {
      throw InvalidConfig("threshold model needs 0 <= eta <= gamma <= 1 for every type");
    }
  }
  const double cells = static_cast<double>(votes.n()) * static_cast<double>(votes.projections());
  ThresholdSelection sel;
  sel.model = model;
  sel.baselines = baselines;
  for (const OutlierType t : kOutlierTypes) {
    sel.delta_type[static_cast<std::size_t>(t)] =
        static_cast<double>(votes.of(t).count()) / cells - baselines.of(t);
  }
  sel.delta_combined = static_cast<double>(votes.any().count()) / cells - baselines.combined;

  ThresholdTriple out;
  out.shape = threshold_from_selection(sel, OutlierType::kShape);
  out.amplitude = threshold_from_selection(sel, OutlierType::kAmplitude);
  out.magnitude = threshold_from_selection(sel, OutlierType::kMagnitude);
  out.selection = sel;
  return out;
}

OutlierReport detect_projection_adaptive(const MultivariateFunctionalDataset& data,
                                         const DirectionSet& directions,
                                         const Baselines& baselines, const ThresholdModel& model,
                                         const CutoffSpec& spec) {
  const VoteMatrix votes = compute_votes(data, directions, spec);
  const ThresholdTriple thresholds = select_thresholds(votes, baselines, model);
  OutlierReport report;
  report.method = DetectionMethod::kProjection;
  report.cutoff = spec;
  report.flags = flags_from_votes(votes, thresholds);
  report.proportions = votes.proportions;
  report.thresholds = thresholds;
  report.projections = directions.count();
  report.degenerate_projections = votes.degenerate_projections;
  report.seed = directions.seed;
  return report;
}

Baselines estimate_baselines(const SimulationSpec& null_model, Eigen::Index reps,
                             Eigen::Index directions, std::uint64_t seed, const CutoffSpec& spec) {
  if (reps < 1) throw InvalidConfig("baseline estimation needs reps >= 1");
  if (directions < 1) throw InvalidConfig("baseline estimation needs at least one direction");
  if (model_contaminates(null_model.model) && null_model.contamination_rate > 0.0) {
    throw InvalidConfig("baselines must be estimated on an outlier-free model");
  }

  std::vector<std::array<double, 4>> per_rep(static_cast<std::size_t>(reps));
  parallel_for(per_rep.size(), [&](std::size_t r) {
    SimulationSpec spec_r = null_model;
    spec_r.seed = derive_seed(seed, {r, 0});
    const LabeledDataset sample = generate(spec_r);
    const DirectionSet dirs = generate_directions(sample.data.d(), directions, derive_seed(seed, {r, 1}));
    const VoteMatrix votes = compute_votes(sample.data, dirs, spec);
    const double cells = static_cast<double>(votes.n()) * static_cast<double>(votes.projections());
    per_rep[r] = {static_cast<double>(votes.of(OutlierType::kShape).count()) / cells,
                  static_cast<double>(votes.of(OutlierType::kAmplitude).count()) / cells,
                  static_cast<double>(votes.of(OutlierType::kMagnitude).count()) / cells,
                  static_cast<double>(votes.any().count()) / cells};
  });

  std::array<double, 4> sum{};
  for (const auto& row : per_rep) {
    for (std::size_t c = 0; c < 4; ++c) sum[c] += row[c];
  }
  const auto denom = static_cast<double>(reps);
  return {sum[0] / denom, sum[1] / denom, sum[2] / denom, sum[3] / denom};
}

}  // namespace fmuod
