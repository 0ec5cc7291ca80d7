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

// Randomized algebraic laws of the indices, cutoffs and projection voting. Each check runs
// `cases` independent draws and reports how many violated the law. Shared by the unit
// tests and the acceptance binary.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

#include "fmuod/cutoffs.hpp"
#include "fmuod/indices.hpp"
#include "fmuod/multivariate.hpp"
#include "fmuod/random.hpp"
#include "support.hpp"

namespace fmuod::testing {

struct LawResult {
  std::string name;
  int cases = 0;
  int failures = 0;

  bool ok() const { return cases > 0 && failures == 0; }
};

inline constexpr double kLawTolerance = 1e-9;

namespace detail {

struct Case {
  Engine engine;
  Grid grid;
  ReferenceCurve<double> ref;
  Eigen::VectorXd y;
};

inline ReferenceCurve<double> reference_of(const Eigen::VectorXd& mu) {
  return {mu, center_curve(mu)};
}

inline Case draw_case(std::uint64_t seed, int i) {
  Engine engine = make_engine(seed, {static_cast<std::uint64_t>(i)});
  std::uniform_int_distribution<Eigen::Index> size(8, 128);
  const Eigen::Index k = size(engine);
  Eigen::VectorXd mu = random_smooth_curve(engine, k);
  Eigen::VectorXd y = random_smooth_curve(engine, k);
  return {std::move(engine), Grid::uniform(k), reference_of(mu), std::move(y)};
}

template <typename Engine>
double draw_scale(Engine& engine, bool negative) {
  std::uniform_real_distribution<double> mag(0.1, 10.0);
  const double a = mag(engine);
  return negative ? -a : a;
}

inline bool subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// n curves in d dimensions: a random common mean plus per-curve smooth noise, with a few
/// shifted or rescaled curves so that every flag type occurs.
inline MultivariateFunctionalDataset random_multivariate(Engine& engine, Eigen::Index n,
                                                         Eigen::Index k, Eigen::Index d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXd> margins;
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::VectorXd mean = 3.0 * random_smooth_curve(engine, k);
    Eigen::MatrixXd m(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      m.row(i) = (mean + 0.3 * random_smooth_curve(engine, k)).transpose();
      for (Eigen::Index p = 0; p < k; ++p) m(i, p) += 0.2 * normal(engine);
    }
    margins.push_back(std::move(m));
  }
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  for (int c = 0; c < 3; ++c) {
    const Eigen::Index i = pick(engine);
    for (auto& m : margins) {
      if (c == 0) m.row(i).array() += 6.0;
      if (c == 1) m.row(i) *= 2.5;
      if (c == 2) m.row(i) = m.row(i).reverse().eval();
    }
  }
  return {std::move(margins), Grid::uniform(k)};
}

}  // namespace detail

/// I_M(ay+b) = a I_M(y) + b, I_A(ay+b) = a I_A(y) + a - 1, I_S(ay+b) = I_S(y) for a > 0
/// and 2 - I_S(y) for a < 0.
inline LawResult check_affine_laws(std::uint64_t seed, int cases) {
  LawResult r{"affine transform laws (I_M, I_A, I_S)", cases, 0};
  for (int i = 0; i < cases; ++i) {
    detail::Case c = detail::draw_case(seed, i);
    std::normal_distribution<double> normal(0.0, 10.0);
    const double a = detail::draw_scale(c.engine, i % 2 == 1);
    const double b = normal(c.engine);
    const Eigen::VectorXd y2 = (a * c.y.array() + b).matrix();
    const IndexTriple<double> base = compute_indices(c.y, c.ref, c.grid);
    const IndexTriple<double> moved = compute_indices(y2, c.ref, c.grid);

    const double mag_scale = std::abs(a) * (std::abs(c.y.mean()) + std::abs(base.beta * c.ref.values.mean())) +
                             std::abs(b);
    const double amp_scale = std::abs(a) * (std::abs(base.amplitude) + 1.0);
    const double shape_expected = a > 0 ? base.shape : 2.0 - base.shape;
    const bool ok = rel_close(moved.magnitude, a * base.magnitude + b, kLawTolerance, mag_scale) &&
                    rel_close(moved.amplitude, a * base.amplitude + a - 1.0, kLawTolerance, amp_scale) &&
                    rel_close(moved.shape, shape_expected, kLawTolerance);
    if (!ok) ++r.failures;
  }
  return r;
}

/// I_M(y + z) = I_M(y) + I_M(z) against one fixed reference.
inline LawResult check_magnitude_additivity(std::uint64_t seed, int cases) {
  LawResult r{"magnitude additivity", cases, 0};
  for (int i = 0; i < cases; ++i) {
    detail::Case c = detail::draw_case(seed, i);
    const Eigen::VectorXd z = random_smooth_curve(c.engine, c.grid.size());
    const IndexTriple<double> iy = compute_indices(c.y, c.ref, c.grid);
    const IndexTriple<double> iz = compute_indices(z, c.ref, c.grid);
    const IndexTriple<double> sum = compute_indices(Eigen::VectorXd(c.y + z), c.ref, c.grid);
    const double scale = std::abs(c.y.mean()) + std::abs(z.mean()) +
                         (std::abs(iy.beta) + std::abs(iz.beta)) * std::abs(c.ref.values.mean());
    if (!rel_close(sum.magnitude, iy.magnitude + iz.magnitude, kLawTolerance, scale)) ++r.failures;
  }
  return r;
}

/// I_A(y + z) = I_A(y) whenever the centered z is orthogonal to the centered reference.
inline LawResult check_orthogonal_amplitude(std::uint64_t seed, int cases) {
  LawResult r{"orthogonal-z amplitude invariance", cases, 0};
  for (int i = 0; i < cases; ++i) {
    detail::Case c = detail::draw_case(seed, i);
    std::normal_distribution<double> normal(0.0, 5.0);
    Eigen::VectorXd z = random_smooth_curve(c.engine, c.grid.size());
    z.array() -= z.mean();
    z -= (z.dot(c.ref.centered) / c.ref.centered.squaredNorm()) * c.ref.centered;
    z.array() += normal(c.engine);
    const IndexTriple<double> base = compute_indices(c.y, c.ref, c.grid);
    const IndexTriple<double> moved = compute_indices(Eigen::VectorXd(c.y + z), c.ref, c.grid);
    const double scale = 1.0 + std::abs(base.beta) + (z.array() - z.mean()).matrix().norm() / c.ref.centered.norm();
    if (!rel_close(moved.amplitude, base.amplitude, kLawTolerance, scale)) ++r.failures;
  }
  return r;
}

/// |I_M| unchanged for b = (-a +- 1) I_M(y); |I_A| unchanged for a = (1 - I_A)/(1 + I_A).
inline LawResult check_absolute_corollaries(std::uint64_t seed, int cases) {
  LawResult r{"original absolute variant corollaries (I_Mv, I_Av)", cases, 0};
  for (int i = 0; i < cases; ++i) {
    detail::Case c = detail::draw_case(seed, i);
    const IndexTriple<double> base = compute_indices(c.y, c.ref, c.grid);
    const auto abs_table = [&](const Eigen::VectorXd& curve) {
      const FunctionalDatasetd one(curve.transpose(), c.grid);
      return compute_index_table(one, c.ref, IndexVariant::kOriginalAbsolute).row(0);
    };
    const IndexTriple<double> base_abs = abs_table(c.y);

    const double a = detail::draw_scale(c.engine, i % 2 == 1);
    const double sign = (i / 2) % 2 == 0 ? 1.0 : -1.0;
    const double b = (-a + sign) * base.magnitude;
    const IndexTriple<double> mv = abs_table(Eigen::VectorXd((a * c.y.array() + b).matrix()));
    const double mag_scale = std::abs(a) * (std::abs(c.y.mean()) + std::abs(base.beta * c.ref.values.mean())) +
                             std::abs(b);
    bool ok = rel_close(mv.magnitude, base_abs.magnitude, kLawTolerance, mag_scale);

    // The amplitude construction needs beta away from 0.
    if (std::abs(base.beta) > 1e-3) {
      const double a2 = (1.0 - base.amplitude) / (1.0 + base.amplitude);
      std::normal_distribution<double> normal(0.0, 10.0);
      const IndexTriple<double> av = abs_table(Eigen::VectorXd((a2 * c.y.array() + normal(c.engine)).matrix()));
      ok = ok && rel_close(av.amplitude, base_abs.amplitude, kLawTolerance,
                           std::abs(a2) * (std::abs(base.amplitude) + 1.0));
    }
    if (!ok) ++r.failures;
  }
  return r;
}

/// Two-sided boxplot flags always contain the upper-only flags.
inline LawResult check_cutoff_containment(std::uint64_t seed, int cases) {
  LawResult r{"two-sided cutoff contains upper-only cutoff", cases, 0};
  for (int i = 0; i < cases; ++i) {
    Engine engine = make_engine(seed, {static_cast<std::uint64_t>(i)});
    std::uniform_int_distribution<Eigen::Index> size(4, 200);
    std::student_t_distribution<double> heavy(2.0);
    std::uniform_real_distribution<double> factor(0.1, 3.0);
    const Eigen::Index n = size(engine);
    Eigen::VectorXd v(n);
    for (Eigen::Index j = 0; j < n; ++j) v[j] = heavy(engine);
    if (i % 5 == 0) v.head(n / 2).setConstant(v[0]);  // ties
    const double f = factor(engine);
    if (!detail::subset(boxplot_cutoff(v, CutoffRule::kUpperOnly, f), boxplot_cutoff(v, CutoffRule::kTwoSided, f))) {
      ++r.failures;
    }
  }
  return r;
}

/// Raising a threshold never adds a flag of that type, and any-vote flags contain all others.
inline LawResult check_threshold_monotonicity(std::uint64_t seed, int cases) {
  LawResult r{"projection flags monotone in tau", cases, 0};
  for (int i = 0; i < cases; ++i) {
    Engine engine = make_engine(seed, {static_cast<std::uint64_t>(i)});
    std::uniform_int_distribution<Eigen::Index> n_dist(8, 30), k_dist(6, 20), d_dist(1, 4), l_dist(1, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const MultivariateFunctionalDataset data =
        detail::random_multivariate(engine, n_dist(engine), k_dist(engine), d_dist(engine));
    const VoteMatrix votes = compute_votes(data, generate_directions(data.d(), l_dist(engine), engine()));
    ThresholdTriple low{unit(engine), unit(engine), unit(engine), std::nullopt};
    ThresholdTriple high{low.shape + (1.0 - low.shape) * unit(engine),
                         low.amplitude + (1.0 - low.amplitude) * unit(engine),
                         low.magnitude + (1.0 - low.magnitude) * unit(engine), std::nullopt};
    const FlagSet lo = flags_from_votes(votes, low);
    const FlagSet hi = flags_from_votes(votes, high);
    const FlagSet any = flags_from_votes(votes, ThresholdTriple::any_vote());
    const bool ok = detail::subset(hi.shape, lo.shape) && detail::subset(hi.amplitude, lo.amplitude) &&
                    detail::subset(hi.magnitude, lo.magnitude) && detail::subset(lo.union_set, any.union_set);
    if (!ok) ++r.failures;
  }
  return r;
}

/// One projection on the direction (+1) of univariate data reproduces univariate detection.
inline LawResult check_univariate_projection(std::uint64_t seed, int cases) {
  LawResult r{"d=1 projection equals univariate detection", cases, 0};
  for (int i = 0; i < cases; ++i) {
    Engine engine = make_engine(seed, {static_cast<std::uint64_t>(i)});
    std::uniform_int_distribution<Eigen::Index> n_dist(4, 40), k_dist(4, 40);
    const MultivariateFunctionalDataset data =
        detail::random_multivariate(engine, n_dist(engine), k_dist(engine), 1);
    const FunctionalDatasetd uni = data.marginal(0);
    const FlagSet expected = classify_outliers(compute_index_table(uni, reference_from_sample(uni)));
    const DirectionSet plus{Eigen::MatrixXd::Ones(1, 1), 0};
    const OutlierReport got = detect_projection(data, plus, ThresholdTriple::any_vote());
    const bool ok = got.flags.shape == expected.shape && got.flags.amplitude == expected.amplitude &&
                    got.flags.magnitude == expected.magnitude && got.flags.union_set == expected.union_set;
    if (!ok) ++r.failures;
  }
  return r;
}

}  // namespace fmuod::testing
