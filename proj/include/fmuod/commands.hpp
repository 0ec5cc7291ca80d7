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

// Subcommands of the fmuod executable. Each writes its result files into `out_dir`
// (created when missing) and throws fmuod::Error subclasses on failure; run_cli maps
// those to exit codes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fmuod/benchmark.hpp"
#include "fmuod/csv_io.hpp"
#include "fmuod/simulation.hpp"

namespace fmuod::cli {

inline constexpr std::uint64_t kDefaultSeed = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitDegenerate = 4;

/// Method settings shared by detect and benchmark.
struct MethodOptions {
  std::string method = "FST_PRJ1";
  Eigen::Index directions = 60;
  double tau_shape = 0.4;
  double tau_amplitude = 0.3;
  double tau_magnitude = 0.3;
  std::string baselines_path;  // required by FST_PRJ
  std::string scale = "none";  // FST_STR only
};

struct DetectOptions {
  std::string input;
  std::string layout = "long";
  MethodOptions method;
  std::uint64_t seed = kDefaultSeed;
  bool projection_indices = false;
  std::string out_dir = ".";
};

struct SimulateOptions {
  std::string model = "M1";
  Eigen::Index n = 100;
  Eigen::Index k = 50;
  double alpha = 0.1;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = ".";
};

struct BenchmarkOptions {
  std::string models = "M1";  // comma-separated lists
  std::string methods = "FST_PRJ1";
  std::string scopes = "union";
  MethodOptions method;
  Eigen::Index n = 100;
  Eigen::Index k = 50;
  double alpha = 0.1;
  Eigen::Index reps = 50;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = ".";
};

struct SweepOptions {
  std::string model = "M1";
  std::vector<std::string> thresholds;  // "shape,amplitude,magnitude"; empty = uniform grid
  Eigen::Index directions = 60;
  Eigen::Index n = 100;
  Eigen::Index k = 50;
  double alpha = 0.1;
  Eigen::Index reps = 50;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = ".";
};

struct BaselinesOptions {
  std::string model = "M0";
  Eigen::Index directions = 60;
  Eigen::Index n = 100;
  Eigen::Index k = 50;
  Eigen::Index reps = 50;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = ".";
};

/// report.json, indices.csv (unless a projection method runs without projection_indices)
/// and plot.csv.
void cmd_detect(const DetectOptions& options);
/// data.csv, truth.csv and simulation.json.
void cmd_simulate(const SimulateOptions& options);
/// benchmark.csv and benchmark.txt. Timing goes to `log` only, so outputs stay reproducible.
void cmd_benchmark(const BenchmarkOptions& options, std::ostream& log);
/// sweep.csv and sweep_reps.csv.
void cmd_sweep(const SweepOptions& options);
/// baselines.json, readable by --baselines.
void cmd_baselines(const BaselinesOptions& options);

Baselines read_baselines_file(const std::string& path);
Layout parse_layout(const std::string& text);
ThresholdTriple parse_threshold_triple(const std::string& text);

/// Parses the command line, runs the subcommand and returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fmuod::cli
