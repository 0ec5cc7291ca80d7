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

#include "fmuod/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fmuod/errors.hpp"
#include "fmuod/indices.hpp"
#include "fmuod/version.hpp"

namespace fmuod::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (!item.empty()) items.push_back(item);
  }
  if (items.empty()) throw InvalidConfig("empty list '" + text + "'");
  return items;
}

// Binary mode keeps line endings identical across platforms.
void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir.empty() ? "." : dir);
  fs::create_directories(p);
  return p;
}

std::string num(double v) { return format_double(v); }
std::string num(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

ModelId model_from(const std::string& text) {
  const auto id = parse_model(text);
  if (!id) throw InvalidConfig("unknown model '" + text + "'");
  return *id;
}

Method method_from(const std::string& text) {
  const auto m = parse_method(text);
  if (!m) {
    throw InvalidConfig("unknown method '" + text +
                        "' (expected FST_MAR, FST_STR, FST_PRJ, FST_PRJ1 or FST_PRJ2)");
  }
  return *m;
}

Scaling scaling_from(const std::string& text) {
  if (text == "none") return Scaling::kNone;
  if (text == "minmax") return Scaling::kMinMax;
  throw InvalidConfig("unknown scale '" + text + "' (expected none or minmax)");
}

std::string_view scaling_name(Scaling s) { return s == Scaling::kMinMax ? "minmax" : "none"; }

bool is_projection(Method m) {
  return m == Method::kProjection || m == Method::kProjectionFixed ||
         m == Method::kProjectionAnyVote;
}

MethodConfig method_config(const MethodOptions& o, Method method) {
  MethodConfig c;
  c.method = method;
  c.directions = o.directions;
  c.thresholds = {o.tau_shape, o.tau_amplitude, o.tau_magnitude, std::nullopt};
  c.scaling = scaling_from(o.scale);
  if (method == Method::kProjection) {
    if (o.baselines_path.empty()) {
      throw InvalidConfig("FST_PRJ needs --baselines FILE (write one with the baselines command)");
    }
    c.baselines = read_baselines_file(o.baselines_path);
  }
  c.validate();
  return c;
}

SimulationSpec simulation_spec(ModelId model, Eigen::Index n, Eigen::Index k, double alpha,
                               std::uint64_t seed) {
  SimulationSpec spec;
  spec.model = model;
  spec.n = n;
  spec.k = k;
  spec.contamination_rate = alpha;
  spec.seed = seed;
  spec.validate();
  return spec;
}

Json baselines_json(const Baselines& b) {
  return Json{{"shape", b.shape}, {"amplitude", b.amplitude}, {"magnitude", b.magnitude},
              {"combined", b.combined}};
}

Json thresholds_json(const ThresholdTriple& t) {
  Json j{{"shape", t.shape}, {"amplitude", t.amplitude}, {"magnitude", t.magnitude}};
  if (t.selection) {
    const ThresholdSelection& s = *t.selection;
    j["selection"] = Json{
        {"gamma", s.model.gamma},
        {"eta", s.model.eta},
        {"baselines", baselines_json(s.baselines)},
        {"delta", Json{{"shape", s.delta_type[0]},
                       {"amplitude", s.delta_type[1]},
                       {"magnitude", s.delta_type[2]},
                       {"combined", s.delta_combined}}},
    };
  }
  return j;
}

Json method_json(const MethodConfig& c) {
  Json j{{"method", method_name(c.method)}, {"whisker_factor", c.cutoff.whisker_factor}};
  if (c.method == Method::kStringed) j["scale"] = scaling_name(c.scaling);
  if (is_projection(c.method)) j["directions"] = c.directions;
  if (c.method == Method::kProjectionFixed) j["thresholds"] = thresholds_json(c.thresholds);
  if (c.baselines) j["baselines"] = baselines_json(*c.baselines);
  return j;
}

Json header_json(std::string_view command) {
  return Json{{"schema_version", kReportSchemaVersion},
              {"library_version", kVersion},
              {"command", command}};
}

bool contains(const IndexSet& set, Eigen::Index i) {
  return std::binary_search(set.begin(), set.end(), i);
}

Json id_list(const IndexSet& set, const std::vector<std::string>& ids) {
  Json out = Json::array();
  for (const Eigen::Index i : set) out.push_back(ids[static_cast<std::size_t>(i)]);
  return out;
}

const IndexSet& flags_of(const FlagSet& f, OutlierType t) {
  switch (t) {
    case OutlierType::kShape: return f.shape;
    case OutlierType::kAmplitude: return f.amplitude;
    case OutlierType::kMagnitude: return f.magnitude;
  }
  return f.union_set;
}

constexpr std::array<std::string_view, 3> kTypeNames = {"shape", "amplitude", "magnitude"};

void append_index_rows(std::string& csv, const std::string& component,
                       const IndexTable<double>& table, const std::vector<std::string>& ids) {
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    csv += ids[static_cast<std::size_t>(i)] + ',' + component + ',' + num(table.shape[i]) + ',' +
           num(table.amplitude[i]) + ',' + num(table.magnitude[i]) + '\n';
  }
}

IndexTable<double> indices_of(const FunctionalDatasetd& data) {
  return compute_index_table(data, reference_from_sample(data));
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string mean_sd(const std::optional<Summary>& s, int digits = 1) {
  if (!s) return "-";
  return fixed(s->mean, digits) + " (" + fixed(s->sd, digits) + ")";
}

std::string aligned_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const std::string& cell = rows[r][c];
      if (c > 0) line += "  ";
      // Left-align the label columns, right-align numbers.
      const std::string pad(width[c] - cell.size(), ' ');
      line += c < 3 ? cell + pad : pad + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (const std::size_t w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
    }
  }
  return out;
}

std::string summary_cells(const std::optional<Summary>& s) {
  return s ? num(s->mean) + ',' + num(s->sd) : std::string(",");
}

}  // namespace

Layout parse_layout(const std::string& text) {
  if (text == "long" || text == "long_multivariate") return Layout::kLongMultivariate;
  if (text == "wide" || text == "wide_univariate") return Layout::kWideUnivariate;
  throw InvalidConfig("unknown layout '" + text + "' (expected long or wide)");
}

ThresholdTriple parse_threshold_triple(const std::string& text) {
  const std::vector<std::string> parts = split_list(text);
  std::vector<double> values;
  for (const std::string& p : parts) {
    double v = 0.0;
    if (!parse_double(p, v) || !(v >= 0.0 && v <= 1.0)) {
      throw InvalidConfig("threshold '" + p + "' is not a number in [0, 1]");
    }
    values.push_back(v);
  }
  if (values.size() == 1) return {values[0], values[0], values[0], std::nullopt};
  if (values.size() != 3) {
    throw InvalidConfig("threshold triple '" + text + "' needs 1 or 3 comma-separated values");
  }
  return {values[0], values[1], values[2], std::nullopt};
}

Baselines read_baselines_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open baselines file '" + path + "'", 0);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("baselines file '" + path + "': " + e.what(), 0);
  }
  const auto field = [&](const char* name) {
    if (!j.contains("baselines") || !j["baselines"].contains(name) ||
        !j["baselines"][name].is_number()) {
      throw ParseError("baselines file '" + path + "' lacks numeric baselines." + name, 0);
    }
    return j["baselines"][name].get<double>();
  };
  Baselines b;
  b.shape = field("shape");
  b.amplitude = field("amplitude");
  b.magnitude = field("magnitude");
  b.combined = field("combined");
  return b;
}

void cmd_detect(const DetectOptions& o) {
  if (o.input.empty()) throw InvalidConfig("detect needs --input FILE");
  const Layout layout = parse_layout(o.layout);
  const Method method = method_from(o.method.method);
  const MethodConfig config = method_config(o.method, method);
  const ParsedDataset parsed = read_dataset_file(o.input, layout);
  const MultivariateFunctionalDataset& data = parsed.data;
  const std::vector<std::string>& ids = parsed.curve_ids;
  const fs::path dir = prepare_dir(o.out_dir);

  const OutlierReport report = run_method(data, config, o.seed);

  // Per-type proportions for the plot file: vote shares for projections, the share of
  // flagging dimensions for the marginal method, 0/1 for stringing.
  Eigen::MatrixXd proportions = Eigen::MatrixXd::Zero(data.n(), 3);
  std::string indices = "curve_id,component,shape,amplitude,magnitude\n";
  bool write_indices = true;

  if (method == Method::kMarginal) {
    for (Eigen::Index j = 0; j < data.d(); ++j) {
      const IndexTable<double> table = indices_of(data.marginal(j));
      append_index_rows(indices, data.dim_names()[static_cast<std::size_t>(j)], table, ids);
      const FlagSet flags = classify_outliers(table, config.cutoff);
      for (const OutlierType t : kOutlierTypes) {
        for (const Eigen::Index i : flags_of(flags, t)) {
          proportions(i, static_cast<int>(t)) += 1.0 / static_cast<double>(data.d());
        }
      }
    }
  } else if (method == Method::kStringed) {
    append_index_rows(indices, "stringed", indices_of(string_dimensions(data, config.scaling)), ids);
    for (const OutlierType t : kOutlierTypes) {
      for (const Eigen::Index i : flags_of(report.flags, t)) proportions(i, static_cast<int>(t)) = 1.0;
    }
  } else {
    proportions = *report.proportions;
    write_indices = o.projection_indices;
    if (write_indices) {
      const DirectionSet directions = generate_directions(data.d(), config.directions, o.seed);
      for (Eigen::Index l = 0; l < directions.count(); ++l) {
        const FunctionalDatasetd projected = project(data, directions.vectors.row(l).transpose());
        try {
          append_index_rows(indices, "projection_" + std::to_string(l), indices_of(projected), ids);
        } catch (const DegenerateReference&) {
          // Matches the voting rule: a degenerate projection contributes nothing.
        }
      }
    }
  }

  std::string plot = "curve_id,type,proportion,flagged\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (const OutlierType t : kOutlierTypes) {
      plot += ids[static_cast<std::size_t>(i)] + ',' + std::string(kTypeNames[static_cast<int>(t)]) +
              ',' + num(proportions(i, static_cast<int>(t))) + ',' +
              (contains(flags_of(report.flags, t), i) ? "1" : "0") + '\n';
    }
  }

  Json j = header_json("detect");
  Json cfg = method_json(config);
  cfg["input"] = o.input;
  cfg["layout"] = layout == Layout::kWideUnivariate ? "wide_univariate" : "long_multivariate";
  cfg["seed"] = o.seed;
  j["config"] = cfg;
  j["data"] = Json{{"n", data.n()}, {"k", data.k()}, {"d", data.d()}, {"dim_names", data.dim_names()}};
  j["curve_ids"] = ids;
  j["flags"] = Json{{"shape", id_list(report.flags.shape, ids)},
                    {"amplitude", id_list(report.flags.amplitude, ids)},
                    {"magnitude", id_list(report.flags.magnitude, ids)},
                    {"union", id_list(report.flags.union_set, ids)}};
  if (report.thresholds) j["thresholds"] = thresholds_json(*report.thresholds);
  if (is_projection(method)) {
    j["projections"] = Json{{"count", report.projections},
                            {"degenerate", report.degenerate_projections}};
    Json props = Json::object();
    for (const OutlierType t : kOutlierTypes) {
      std::vector<double> col(static_cast<std::size_t>(data.n()));
      for (Eigen::Index i = 0; i < data.n(); ++i) col[static_cast<std::size_t>(i)] = proportions(i, static_cast<int>(t));
      props[std::string(kTypeNames[static_cast<int>(t)])] = col;
    }
    j["proportions"] = props;
  }

  write_file(dir / "report.json", j.dump(2) + '\n');
  write_file(dir / "plot.csv", plot);
  if (write_indices) write_file(dir / "indices.csv", indices);
}

void cmd_simulate(const SimulateOptions& o) {
  const SimulationSpec spec = simulation_spec(model_from(o.model), o.n, o.k, o.alpha, o.seed);
  const LabeledDataset sim = generate(spec);
  const fs::path dir = prepare_dir(o.out_dir);

  std::ostringstream data;
  write_long_csv(data, sim.data);

  std::string truth = "curve_id,W_1,W_2,W_3,T,R_1,R_2,R_3\n";
  const auto cell = [](double v) { return std::isnan(v) ? std::string() : num(v); };
  for (const OutlierParams& p : sim.params) {
    truth += std::to_string(p.index);
    for (const double w : p.sign) truth += ',' + cell(w);
    truth += ',' + cell(p.window_start);
    for (const double r : p.rate) truth += ',' + cell(r);
    truth += '\n';
  }

  Json j = header_json("simulate");
  j["config"] = Json{{"model", model_name(spec.model)}, {"n", spec.n}, {"k", spec.k},
                     {"d", spec.d}, {"basis_count", spec.basis_count},
                     {"alpha", spec.contamination_rate}, {"seed", spec.seed}};
  j["noise_sd"] = sim.noise_sd;
  j["contaminated_dimensions"] = Json::array();
  for (const Eigen::Index dim : contaminated_dimensions(spec.model)) {
    j["contaminated_dimensions"].push_back(sim.data.dim_names()[static_cast<std::size_t>(dim)]);
  }
  j["outliers"] = sim.outliers;

  write_file(dir / "data.csv", data.str());
  write_file(dir / "truth.csv", truth);
  write_file(dir / "simulation.json", j.dump(2) + '\n');
}

void cmd_benchmark(const BenchmarkOptions& o, std::ostream& log) {
  std::vector<ModelId> models;
  for (const std::string& m : split_list(o.models)) models.push_back(model_from(m));
  std::vector<MethodConfig> configs;
  for (const std::string& m : split_list(o.methods)) configs.push_back(method_config(o.method, method_from(m)));
  std::vector<ReportScope> scopes;
  for (const std::string& s : split_list(o.scopes)) {
    const auto scope = parse_scope(s);
    if (!scope) throw InvalidConfig("unknown scope '" + s + "'");
    scopes.push_back(*scope);
  }
  if (o.reps < 1) throw InvalidConfig("--reps must be at least 1");
  const fs::path dir = prepare_dir(o.out_dir);

  std::string csv =
      "model,method,scope,reps,n,k,alpha,directions,tpr_mean,tpr_sd,fpr_mean,fpr_sd,f1_mean,f1_sd\n";
  std::vector<std::vector<std::string>> table = {{"Model", "Method", "Scope", "TPR", "FPR", "F1"}};
  for (const ModelId model : models) {
    const SimulationSpec spec = simulation_spec(model, o.n, o.k, o.alpha, o.seed);
    for (const MethodConfig& config : configs) {
      // Every (model, method) pair reuses the seed, so adding entries to the lists does not
      // change the other rows.
      const std::vector<BenchmarkResult> results = run_benchmark(spec, config, scopes, o.reps, o.seed);
      for (const BenchmarkResult& r : results) {
        const std::string directions = is_projection(config.method) ? std::to_string(config.directions) : "";
        csv += std::string(model_name(model)) + ',' + std::string(method_name(config.method)) + ',' +
               std::string(scope_name(r.scope)) + ',' + std::to_string(o.reps) + ',' +
               std::to_string(o.n) + ',' + std::to_string(o.k) + ',' + num(o.alpha) + ',' +
               directions + ',' + summary_cells(r.tpr) + ',' + summary_cells(r.fpr) + ',' +
               summary_cells(r.f1) + '\n';
        table.push_back({std::string(model_name(model)), std::string(method_name(config.method)),
                         std::string(scope_name(r.scope)), mean_sd(r.tpr), mean_sd(r.fpr),
                         mean_sd(r.f1, 2)});
      }
      log << model_name(model) << ' ' << method_name(config.method) << ": "
          << fixed(results.front().runtime_seconds, 2) << " s\n";
    }
  }
  write_file(dir / "benchmark.csv", csv);
  write_file(dir / "benchmark.txt", aligned_table(table));
}

void cmd_sweep(const SweepOptions& o) {
  const SimulationSpec spec = simulation_spec(model_from(o.model), o.n, o.k, o.alpha, o.seed);
  std::vector<ThresholdTriple> grid;
  for (const std::string& q : o.thresholds) grid.push_back(parse_threshold_triple(q));
  if (grid.empty()) grid = uniform_threshold_grid();
  if (o.directions < 1) throw InvalidConfig("--directions must be at least 1");
  const fs::path dir = prepare_dir(o.out_dir);

  const std::vector<SweepRow> rows = threshold_sweep(spec, grid, o.reps, o.seed, o.directions);

  const std::string prefix_head = "model,reps,n,k,alpha,directions,tau_shape,tau_amplitude,tau_magnitude";
  std::string csv = prefix_head + ",tpr_mean,tpr_sd,fpr_mean,fpr_sd,f1_mean,f1_sd\n";
  std::string reps = "model,tau_shape,tau_amplitude,tau_magnitude,rep,tpr,fpr,f1\n";
  for (const SweepRow& row : rows) {
    const ThresholdTriple& q = row.thresholds;
    const std::string taus = num(q.shape) + ',' + num(q.amplitude) + ',' + num(q.magnitude);
    csv += std::string(model_name(spec.model)) + ',' + std::to_string(o.reps) + ',' +
           std::to_string(o.n) + ',' + std::to_string(o.k) + ',' + num(o.alpha) + ',' +
           std::to_string(o.directions) + ',' + taus + ',' + summary_cells(row.tpr) + ',' +
           summary_cells(row.fpr) + ',' + summary_cells(row.f1) + '\n';
    for (std::size_t r = 0; r < row.repetitions.size(); ++r) {
      const RepetitionOutcome& out = row.repetitions[r];
      reps += std::string(model_name(spec.model)) + ',' + taus + ',' + std::to_string(r) + ',' +
              num(out.tpr) + ',' + num(out.fpr) + ',' + num(out.f1) + '\n';
    }
  }
  write_file(dir / "sweep.csv", csv);
  write_file(dir / "sweep_reps.csv", reps);
}

void cmd_baselines(const BaselinesOptions& o) {
  // The null model is the main model of the chosen family, never contaminated.
  const SimulationSpec spec = simulation_spec(model_from(o.model), o.n, o.k, 0.0, o.seed);
  const fs::path dir = prepare_dir(o.out_dir);
  const Baselines b = estimate_baselines(spec, o.reps, o.directions, o.seed);

  Json j = header_json("baselines");
  j["config"] = Json{{"model", model_name(spec.model)}, {"n", spec.n}, {"k", spec.k},
                     {"reps", o.reps}, {"directions", o.directions}, {"seed", o.seed}};
  j["baselines"] = baselines_json(b);
  write_file(dir / "baselines.json", j.dump(2) + '\n');
}

namespace {

void add_method_options(CLI::App* app, MethodOptions& m) {
  app->add_option("--directions", m.directions, "Number of random projections L")
      ->capture_default_str();
  app->add_option("--tau-shape", m.tau_shape, "FST_PRJ1 shape threshold")->capture_default_str();
  app->add_option("--tau-amplitude", m.tau_amplitude, "FST_PRJ1 amplitude threshold")
      ->capture_default_str();
  app->add_option("--tau-magnitude", m.tau_magnitude, "FST_PRJ1 magnitude threshold")
      ->capture_default_str();
  app->add_option("--baselines", m.baselines_path, "baselines.json for FST_PRJ");
  app->add_option("--scale", m.scale, "FST_STR scaling: none or minmax")->capture_default_str();
}

template <typename Options>
void add_size_options(CLI::App* app, Options& o) {
  app->add_option("--n", o.n, "Curves per dataset")->capture_default_str();
  app->add_option("--k", o.k, "Grid points per curve")->capture_default_str();
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParseError:
    case ErrorKind::kInvalidCurve:
      return kExitParse;
    case ErrorKind::kDegenerateReference:
      return kExitDegenerate;
    case ErrorKind::kInvalidConfig:
    case ErrorKind::kInvalidDirection:
    case ErrorKind::kInsufficientData:
      return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"FastMUOD outlier detection for functional data", "fmuod"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  DetectOptions detect;
  CLI::App* detect_cmd = app.add_subcommand("detect", "Flag outlying curves in a CSV dataset");
  detect_cmd->add_option("--input", detect.input, "Dataset CSV")->required();
  detect_cmd->add_option("--layout", detect.layout, "long (curve_id,t_index,dim_1..) or wide")
      ->capture_default_str();
  detect_cmd->add_option("--method", detect.method.method, "FST_MAR, FST_STR, FST_PRJ, FST_PRJ1, FST_PRJ2")
      ->capture_default_str();
  add_method_options(detect_cmd, detect.method);
  detect_cmd->add_flag("--projection-indices", detect.projection_indices,
                       "Also write per-projection indices to indices.csv");
  detect_cmd->add_option("--seed", detect.seed, "Direction seed")->capture_default_str();
  detect_cmd->add_option("--out", detect.out_dir, "Output directory")->capture_default_str();

  SimulateOptions simulate;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Generate a labeled benchmark dataset");
  simulate_cmd->add_option("--model", simulate.model, "M0..M6 or a variant such as M1_2")
      ->capture_default_str();
  add_size_options(simulate_cmd, simulate);
  simulate_cmd->add_option("--alpha", simulate.alpha, "Contamination rate")->capture_default_str();
  simulate_cmd->add_option("--seed", simulate.seed, "Master seed")->capture_default_str();
  simulate_cmd->add_option("--out", simulate.out_dir, "Output directory")->capture_default_str();

  BenchmarkOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("benchmark", "Monte Carlo TPR/FPR/F1 of detection methods");
  bench_cmd->add_option("--model", bench.models, "Comma-separated models")->capture_default_str();
  bench_cmd->add_option("--method", bench.methods, "Comma-separated methods")->capture_default_str();
  bench_cmd->add_option("--scope", bench.scopes, "Comma-separated: union, shape_only, amplitude_only, magnitude_only")
      ->capture_default_str();
  add_method_options(bench_cmd, bench.method);
  add_size_options(bench_cmd, bench);
  bench_cmd->add_option("--alpha", bench.alpha, "Contamination rate")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Repetitions")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
  bench_cmd->add_option("--out", bench.out_dir, "Output directory")->capture_default_str();

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "FST_PRJ1 performance over a threshold grid");
  sweep_cmd->add_option("--model", sweep.model, "Model")->capture_default_str();
  sweep_cmd->add_option("--q", sweep.thresholds,
                        "Threshold triple 'shape,amplitude,magnitude' or a single value; repeatable "
                        "(default 0.2..0.7 in steps of 0.1)")
      ->take_all()
      ->allow_extra_args(false);
  sweep_cmd->add_option("--directions", sweep.directions, "Number of random projections L")
      ->capture_default_str();
  add_size_options(sweep_cmd, sweep);
  sweep_cmd->add_option("--alpha", sweep.alpha, "Contamination rate")->capture_default_str();
  sweep_cmd->add_option("--reps", sweep.reps, "Repetitions")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out_dir, "Output directory")->capture_default_str();

  BaselinesOptions base;
  CLI::App* base_cmd = app.add_subcommand("baselines", "Estimate FST_PRJ baselines on an outlier-free model");
  base_cmd->add_option("--model", base.model, "Model family (its main model is used)")->capture_default_str();
  base_cmd->add_option("--directions", base.directions, "Number of random projections L")
      ->capture_default_str();
  add_size_options(base_cmd, base);
  base_cmd->add_option("--reps", base.reps, "Null repetitions")->capture_default_str();
  base_cmd->add_option("--seed", base.seed, "Master seed")->capture_default_str();
  base_cmd->add_option("--out", base.out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*detect_cmd) cmd_detect(detect);
    if (*simulate_cmd) cmd_simulate(simulate);
    if (*bench_cmd) cmd_benchmark(bench, err);
    if (*sweep_cmd) cmd_sweep(sweep);
    if (*base_cmd) cmd_baselines(base);
  } catch (const Error& e) {
    err << "fmuod: " << e.what() << '\n';
    if (e.kind() == ErrorKind::kInvalidConfig) err << "Run with --help for usage.\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "fmuod: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

}  // namespace fmuod::cli
