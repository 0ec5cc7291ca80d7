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

#include "fmuod/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fmuod/errors.hpp"

namespace fmuod {

namespace {

using std::numbers::pi;

// Stream purposes for derive_seed paths.
enum Stream : std::uint64_t {
  kNoiseLevels = 0,
  kPlacement = 1,
  kCurve = 2,
  kCurveParams = 3,
};

struct ModelInfo {
  ModelId id;
  std::string_view name;
  ModelId base;
  std::vector<Eigen::Index> dims;
};

const std::vector<ModelInfo>& catalogue() {
  static const std::vector<ModelInfo> info = {
      {ModelId::kM0, "M0", ModelId::kM0, {}},
      {ModelId::kM1, "M1", ModelId::kM1, {0, 1, 2}},
      {ModelId::kM2, "M2", ModelId::kM2, {0, 1, 2}},
      {ModelId::kM3, "M3", ModelId::kM3, {0, 1, 2}},
      {ModelId::kM4, "M4", ModelId::kM4, {0, 1, 2}},
      {ModelId::kM5, "M5", ModelId::kM5, {0, 1, 2}},
      {ModelId::kM6, "M6", ModelId::kM6, {0, 1, 2}},
      {ModelId::kM1_2, "M1_2", ModelId::kM1, {0}},
      {ModelId::kM2_2, "M2_2", ModelId::kM2, {0}},
      {ModelId::kM2_3, "M2_3", ModelId::kM2, {0, 1}},
      {ModelId::kM3_2, "M3_2", ModelId::kM3, {0, 1}},
      {ModelId::kM3_3, "M3_3", ModelId::kM3, {1}},
      {ModelId::kM5_2, "M5_2", ModelId::kM5, {0, 1}},
  };
  return info;
}

const ModelInfo& info_of(ModelId id) {
  for (const ModelInfo& m : catalogue()) {
    if (m.id == id) return m;
  }
  throw InvalidConfig("unknown simulation model");
}

Eigen::Vector3d mu_linear(double t) {
  return {4.0 * t, 30.0 * t * std::pow(1.0 - t, 1.5), 5.0 * (t - 1.0) * (t - 1.0)};
}

Eigen::Vector3d mu_periodic(double t) {
  return {5.0 * std::sin(2.0 * pi * t), 5.0 * std::cos(2.0 * pi * t), 5.0 * (t - 1.0) * (t - 1.0)};
}

Eigen::Vector3d main_mean_at(ModelId base, double t) {
  switch (base) {
    case ModelId::kM0:
    case ModelId::kM1:
      return mu_linear(t);
    case ModelId::kM6:
      return mu_periodic(t) + Eigen::Vector3d(8.0 * t * std::sin(pi * t), t * std::cos(pi * t),
                                              6.0 * std::sin(2.0 * pi * t) - 3.0);
    default:
      return mu_periodic(t);
  }
}

// Deterministic part of a contaminated curve in dimension j, before KL and noise.
double contaminated_mean_at(ModelId base, Eigen::Index j, double t, const OutlierParams& p) {
  const double main = main_mean_at(base, t)[j];
  switch (base) {
    case ModelId::kM1:
      return main + 8.0 * p.sign[static_cast<std::size_t>(j)];
    case ModelId::kM2: {
      const bool inside = t >= p.window_start && t <= p.window_start + 0.1;
      return inside ? main + 8.0 * p.sign[static_cast<std::size_t>(j)] : main;
    }
    case ModelId::kM3: {
      const Eigen::Vector3d shifted(5.0 * std::sin(2.0 * pi * (t - 0.3)),
                                    5.0 * std::cos(2.0 * pi * (t - 0.2)),
                                    5.0 * (0.1 - t) * (0.1 - t));
      return shifted[j];
    }
    case ModelId::kM4: {
      const Eigen::Vector3d u(2.0 * std::sin(4.0 * pi * t), 2.0 * std::cos(4.0 * pi * t),
                              2.0 * std::cos(8.0 * pi * t));
      return main + u[j];
    }
    case ModelId::kM5: {
      const double scaled = (2.0 + p.rate[static_cast<std::size_t>(j)]) * main;
      return main + (j == 2 ? scaled - 6.0 : scaled);
    }
    case ModelId::kM6: {
      const Eigen::Vector3d u(10.0 * t * std::sin(pi * t), 11.0 * t * std::cos(pi * t),
                              10.0 * std::sin(2.0 * pi * t) - 6.0);
      return mu_periodic(t)[j] + u[j];
    }
    default:
      return main;
  }
}

std::string normalize_model_text(std::string_view text) {
  std::string s;
  for (const char c : text) {
    if (c == '.' || c == '-') {
      s.push_back('_');
    } else {
      s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (!s.empty() && s.front() != 'M') s.insert(s.begin(), 'M');
  return s;
}

}  // namespace

std::string_view model_name(ModelId id) { return info_of(id).name; }

std::optional<ModelId> parse_model(std::string_view text) {
  const std::string normalized = normalize_model_text(text);
  for (const ModelInfo& m : catalogue()) {
    if (m.name == normalized) return m.id;
  }
  return std::nullopt;
}

bool model_contaminates(ModelId id) { return id != ModelId::kM0; }

std::vector<Eigen::Index> contaminated_dimensions(ModelId model) { return info_of(model).dims; }

void SimulationSpec::validate() const {
  if (n < 1) throw InvalidConfig("simulation needs n >= 1");
  if (k < 2) throw InvalidConfig("simulation needs k >= 2");
  if (d != 3) throw InvalidConfig("the simulation models are trivariate (d = 3)");
  if (basis_count < 1) throw InvalidConfig("simulation needs at least one basis function");
  if (!(contamination_rate >= 0.0 && contamination_rate < 1.0)) {
    throw InvalidConfig("contamination rate must lie in [0, 1)");
  }
  (void)info_of(model);
}

Eigen::Index SimulationSpec::outlier_count() const {
  if (!model_contaminates(model)) return 0;
  return static_cast<Eigen::Index>(std::floor(contamination_rate * static_cast<double>(n)));
}

std::vector<Eigen::MatrixXd> multivariate_eigenfunctions(Eigen::Index basis_count, Eigen::Index d,
                                                         const Grid& grid) {
  if (basis_count < 1) throw InvalidConfig("need at least one basis function");
  if (d < 1) throw InvalidConfig("need at least one dimension");
  const double length = static_cast<double>(d);
  const double norm = 1.0 / std::sqrt(length);
  std::vector<Eigen::MatrixXd> basis;
  basis.reserve(static_cast<std::size_t>(basis_count));
  for (Eigen::Index m = 1; m <= basis_count; ++m) {
    Eigen::MatrixXd psi(d, grid.size());
    const auto freq = static_cast<double>(m / 2);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index p = 0; p < grid.size(); ++p) {
        const double x = static_cast<double>(j) + grid[p];
        const double angle = 2.0 * pi * freq * x / length;
        if (m == 1) {
          psi(j, p) = norm;
        } else if (m % 2 == 0) {
          psi(j, p) = std::numbers::sqrt2 * norm * std::sin(angle);
        } else {
          psi(j, p) = std::numbers::sqrt2 * norm * std::cos(angle);
        }
      }
    }
    basis.push_back(std::move(psi));
  }
  return basis;
}

Eigen::VectorXd kl_eigenvalues(Eigen::Index basis_count) {
  Eigen::VectorXd nu(basis_count);
  for (Eigen::Index m = 1; m <= basis_count; ++m) {
    nu[m - 1] = static_cast<double>(basis_count + 1 - m) / static_cast<double>(basis_count);
  }
  return nu;
}

Eigen::VectorXd draw_scores(Engine& engine, const Eigen::VectorXd& eigenvalues) {
  Eigen::VectorXd scores(eigenvalues.size());
  for (Eigen::Index m = 0; m < eigenvalues.size(); ++m) {
    std::normal_distribution<double> dist(0.0, std::sqrt(eigenvalues[m]));
    scores[m] = dist(engine);
  }
  return scores;
}

Eigen::MatrixXd main_mean(ModelId model, const Grid& grid) {
  const ModelId base = info_of(model).base;
  Eigen::MatrixXd mu(3, grid.size());
  for (Eigen::Index p = 0; p < grid.size(); ++p) mu.col(p) = main_mean_at(base, grid[p]);
  return mu;
}

LabeledDataset generate(const SimulationSpec& spec) {
  spec.validate();
  const ModelInfo& info = info_of(spec.model);
  const Eigen::Index n = spec.n;
  const Eigen::Index k = spec.k;
  const Eigen::Index d = spec.d;
  const Grid grid = Grid::uniform(k);
  const std::vector<Eigen::MatrixXd> psi = multivariate_eigenfunctions(spec.basis_count, d, grid);
  const Eigen::VectorXd nu = kl_eigenvalues(spec.basis_count);
  const Eigen::MatrixXd mu = main_mean(spec.model, grid);

  std::array<double, 3> noise_sd{};
  {
    Engine engine = make_engine(spec.seed, {kNoiseLevels});
    std::uniform_real_distribution<double> level(0.1, 0.3);
    for (double& s : noise_sd) s = level(engine);
  }

  // Partial Fisher-Yates: the first `count` slots are a uniform sample without replacement.
  const Eigen::Index count = spec.outlier_count();
  IndexSet outliers;
  if (count > 0) {
    Engine engine = make_engine(spec.seed, {kPlacement});
    IndexSet order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (Eigen::Index s = 0; s < count; ++s) {
      std::uniform_int_distribution<Eigen::Index> pick(s, n - 1);
      std::swap(order[static_cast<std::size_t>(s)], order[static_cast<std::size_t>(pick(engine))]);
    }
    outliers.assign(order.begin(), order.begin() + count);
    std::sort(outliers.begin(), outliers.end());
  }
  std::vector<char> is_outlier(static_cast<std::size_t>(n), 0);
  for (const Eigen::Index i : outliers) is_outlier[static_cast<std::size_t>(i)] = 1;

  std::vector<Eigen::MatrixXd> margins(static_cast<std::size_t>(d), Eigen::MatrixXd(n, k));
  std::vector<OutlierParams> params;
  params.reserve(outliers.size());

  for (Eigen::Index i = 0; i < n; ++i) {
    Engine curve_engine = make_engine(spec.seed, {kCurve, static_cast<std::uint64_t>(i)});
    const Eigen::VectorXd scores = draw_scores(curve_engine, nu);
    Eigen::MatrixXd kl = Eigen::MatrixXd::Zero(d, k);
    for (std::size_t m = 0; m < psi.size(); ++m) kl += scores[static_cast<Eigen::Index>(m)] * psi[m];
    Eigen::MatrixXd noise(d, k);
    for (Eigen::Index j = 0; j < d; ++j) {
      std::normal_distribution<double> eps(0.0, noise_sd[static_cast<std::size_t>(j)]);
      for (Eigen::Index p = 0; p < k; ++p) noise(j, p) = eps(curve_engine);
    }

    Engine param_engine = make_engine(spec.seed, {kCurveParams, static_cast<std::uint64_t>(i)});
    Eigen::MatrixXd structural = mu;
    if (is_outlier[static_cast<std::size_t>(i)]) {
      OutlierParams p;
      p.index = i;
      switch (info.base) {
        case ModelId::kM1:
        case ModelId::kM2: {
          std::bernoulli_distribution coin(0.5);
          for (double& w : p.sign) w = coin(param_engine) ? 1.0 : -1.0;
          if (info.base == ModelId::kM2) {
            p.window_start = std::uniform_real_distribution<double>(0.0, 0.9)(param_engine);
          }
          break;
        }
        case ModelId::kM5: {
          std::exponential_distribution<double> expo(2.0);
          for (double& r : p.rate) r = expo(param_engine);
          break;
        }
        default:
          break;
      }
      // Draws for untouched dimensions are made (keeping the stream layout of the base
      // model) but not reported.
      for (Eigen::Index j = 0; j < d; ++j) {
        if (std::find(info.dims.begin(), info.dims.end(), j) != info.dims.end()) continue;
        p.sign[static_cast<std::size_t>(j)] = OutlierParams::kUnset;
        p.rate[static_cast<std::size_t>(j)] = OutlierParams::kUnset;
      }
      for (const Eigen::Index j : info.dims) {
        for (Eigen::Index q = 0; q < k; ++q) {
          structural(j, q) = contaminated_mean_at(info.base, j, grid[q], p);
        }
      }
      params.push_back(p);
    } else if (info.base == ModelId::kM4) {
      std::uniform_real_distribution<double> shift(-2.1, 2.1);
      for (Eigen::Index j = 0; j < d; ++j) structural.row(j).array() += shift(param_engine);
    }

    const Eigen::MatrixXd curve = structural + kl + noise;
    for (Eigen::Index j = 0; j < d; ++j) margins[static_cast<std::size_t>(j)].row(i) = curve.row(j);
  }

  return {MultivariateFunctionalDataset(std::move(margins), grid, {"dim_1", "dim_2", "dim_3"}),
          std::move(outliers), std::move(params), noise_sd};
}

}  // namespace fmuod
