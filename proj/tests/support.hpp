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

// Test helpers: independent scalar oracles written with plain loops over std::vector,
// random smooth curves, and an exact Mann-Kendall trend test.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace fmuod::testing {

using Vec = std::vector<double>;

inline Vec to_vec(const Eigen::Ref<const Eigen::VectorXd>& v) { return Vec(v.data(), v.data() + v.size()); }

inline Eigen::VectorXd to_eigen(const Vec& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double oracle_mean(const Vec& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct OracleIndices {
  double shape, amplitude, magnitude;
};

// Textbook formulas on raw sums; no shared code with the library.
inline OracleIndices oracle_indices(const Vec& y, const Vec& mu) {
  const double my = oracle_mean(y);
  const double mm = oracle_mean(mu);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    sxy += (y[j] - my) * (mu[j] - mm);
    sxx += (mu[j] - mm) * (mu[j] - mm);
    syy += (y[j] - my) * (y[j] - my);
  }
  const double beta = sxy / sxx;
  return {1.0 - sxy / std::sqrt(sxx * syy), beta - 1.0, my - beta * mm};
}

inline double oracle_median(Vec v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Hyndman-Fan type 7: h = (n-1)p, linear between order statistics.
inline double oracle_quantile(Vec v, double p) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline std::vector<Eigen::Index> oracle_fence(const Vec& v, bool two_sided, double factor = 1.5) {
  const double q1 = oracle_quantile(v, 0.25);
  const double q3 = oracle_quantile(v, 0.75);
  const double iqr = q3 - q1;
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > q3 + factor * iqr || (two_sided && v[i] < q1 - factor * iqr)) {
      out.push_back(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

/// Random trigonometric polynomial plus a linear trend, evaluated on k equidistant points of [0, 1].
template <typename Engine>
Eigen::VectorXd random_smooth_curve(Engine& engine, Eigen::Index k) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double offset = 3.0 * normal(engine);
  const double slope = normal(engine);
  double coef[4];
  double phi[4];
  for (int m = 0; m < 4; ++m) {
    coef[m] = normal(engine) / (m + 1);
    phi[m] = phase(engine);
  }
  Eigen::VectorXd y(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(k - 1);
    double v = offset + slope * t;
    for (int m = 0; m < 4; ++m) v += coef[m] * std::sin(2.0 * std::numbers::pi * (m + 1) * t + phi[m]);
    y[j] = v;
  }
  return y;
}

inline bool rel_close(double actual, double expected, double tol, double scale = 1.0) {
  return std::abs(actual - expected) <= tol * std::max({1.0, std::abs(expected), scale});
}

/// Mann-Kendall S statistic sum_{i<j} sign(x_j - x_i).
inline int mann_kendall_s(const Vec& x) {
  int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) s += (x[j] > x[i]) - (x[j] < x[i]);
  }
  return s;
}

/// Exact one-sided p-value of a decreasing trend, P(S <= S_obs) under exchangeability,
/// by enumerating every permutation of ranks (series up to ~9 points).
inline double mann_kendall_decreasing_p(const Vec& x) {
  const int observed = mann_kendall_s(x);
  Vec ranks(x.size());
  std::iota(ranks.begin(), ranks.end(), 0.0);
  std::size_t total = 0;
  std::size_t extreme = 0;
  do {
    ++total;
    if (mann_kendall_s(ranks) <= observed) ++extreme;
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace fmuod::testing
