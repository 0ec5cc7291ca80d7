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

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fmuod/commands.hpp"
#include "fmuod/csv_io.hpp"
#include "fmuod/errors.hpp"
#include "fmuod/indices.hpp"
#include "fmuod/multivariate.hpp"

using namespace fmuod;
namespace fs = std::filesystem;

namespace {

ParsedDataset parse(const std::string& text, Layout layout) {
  std::istringstream in(text);
  return read_dataset(in, layout);
}

std::size_t parse_error_line(const std::string& text, Layout layout) {
  try {
    parse(text, layout);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

/// Fresh scratch directory under the system temp path.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fmuod_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "fmuod");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  Engine engine = make_engine(91, {0});
  std::normal_distribution<double> normal(0.0, 1e3);
  for (int r = 0; r < 2000; ++r) {
    const double v = normal(engine) * std::pow(10.0, r % 40 - 20);
    double back = 0.0;
    REQUIRE(parse_double(format_double(v), back));
    CHECK(back == v);
  }
  double v = 0.0;
  CHECK(parse_double("+1.5", v));
  CHECK(v == 1.5);
  CHECK_FALSE(parse_double("1.5x", v));
  CHECK_FALSE(parse_double("", v));
  CHECK_FALSE(parse_double(" 1", v));
}

TEST_CASE("long layout round trip") {
  Engine engine = make_engine(92, {0});
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXd> margins(2, Eigen::MatrixXd(5, 7));
  for (Eigen::MatrixXd& m : margins) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(engine);
  }
  const MultivariateFunctionalDataset data(margins, Grid::uniform(7), {"x", "y"});
  std::ostringstream out;
  write_long_csv(out, data, {"a", "b", "c", "d", "e"});
  const ParsedDataset back = parse(out.str(), Layout::kLongMultivariate);
  CHECK(back.curve_ids == std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(back.data.dim_names() == std::vector<std::string>{"x", "y"});
  CHECK(back.data.margin(0) == margins[0]);
  CHECK(back.data.margin(1) == margins[1]);
}

TEST_CASE("long layout reading") {
  SUBCASE("header is optional and rows may come in any order") {
    const std::string text = "1,1,5,6\n0,0,1,2\n0,1,3,4\n1,0,7,8\n";
    const ParsedDataset p = parse(text, Layout::kLongMultivariate);
    CHECK(p.curve_ids == std::vector<std::string>{"1", "0"});
    CHECK(p.data.margin(0)(0, 0) == 7.0);
    CHECK(p.data.margin(0)(0, 1) == 5.0);
    CHECK(p.data.margin(1)(1, 1) == 4.0);
  }
  SUBCASE("quotes, blank lines and CRLF") {
    const std::string text = "\"curve_id\",\"t_index\",\"v\"\r\n\r\n\"c\",0,1\r\n\"c\",1,2\r\n";
    const ParsedDataset p = parse(text, Layout::kLongMultivariate);
    CHECK(p.curve_ids == std::vector<std::string>{"c"});
    CHECK(p.data.dim_names() == std::vector<std::string>{"v"});
  }
  SUBCASE("errors carry the line") {
    CHECK(parse_error_line("", Layout::kLongMultivariate) == 0);
    CHECK(parse_error_line("id,t,v\na,0,1\na,1\n", Layout::kLongMultivariate) == 3);
    CHECK(parse_error_line("id,t,v\na,0,1\na,1,abc\n", Layout::kLongMultivariate) == 3);
    CHECK(parse_error_line("id,t,v\na,0,1\na,1,inf\n", Layout::kLongMultivariate) == 3);
    CHECK(parse_error_line("id,t,v\na,0,1\na,1,2\na,0,3\n", Layout::kLongMultivariate) == 4);
    CHECK(parse_error_line("id,t,v\na,0,1\na,1.5,2\n", Layout::kLongMultivariate) == 3);
    CHECK(parse_error_line("id,t,v\na,0,1\na,1,2\nb,0,3\n", Layout::kLongMultivariate) == 4);
    CHECK(parse_error_line("id,t,v\n,0,1\n,1,2\n", Layout::kLongMultivariate) == 2);
  }
  SUBCASE("a single grid point is rejected") {
    CHECK_THROWS_AS(parse("a,0,1\nb,0,2\n", Layout::kLongMultivariate), ParseError);
  }
}

TEST_CASE("wide layout reading") {
  SUBCASE("header detection") {
    CHECK(parse("t1,t2,t3\n1,2,3\n4,5,6\n", Layout::kWideUnivariate).data.n() == 2);
    CHECK(parse("1,2,3\n4,5,6\n", Layout::kWideUnivariate).data.n() == 2);
  }
  SUBCASE("ragged and non-numeric rows") {
    CHECK(parse_error_line("1,2,3\n4,5\n", Layout::kWideUnivariate) == 2);
    CHECK(parse_error_line("1,2,3\n4,5,x\n", Layout::kWideUnivariate) == 2);
    CHECK(parse_error_line("1,2,3\n4,5,nan\n", Layout::kWideUnivariate) == 2);
  }
  SUBCASE("d = 1 marginal detection matches the univariate path") {
    Engine engine = make_engine(93, {0});
    std::normal_distribution<double> normal(0.0, 1.0);
    std::ostringstream text;
    Eigen::MatrixXd values(30, 12);
    for (Eigen::Index i = 0; i < 30; ++i) {
      for (Eigen::Index j = 0; j < 12; ++j) {
        values(i, j) = std::sin(0.5 * static_cast<double>(j)) + normal(engine) * (i == 3 ? 4.0 : 0.3);
        text << (j ? "," : "") << format_double(values(i, j));
      }
      text << '\n';
    }
    const ParsedDataset p = parse(text.str(), Layout::kWideUnivariate);
    CHECK(p.data.d() == 1);
    const FunctionalDatasetd uni(values, Grid::uniform(12));
    const FlagSet direct = classify_outliers(compute_index_table(uni, reference_from_sample(uni)));
    CHECK(detect_marginal(p.data).flags.union_set == direct.union_set);
  }
}

TEST_CASE("option parsers") {
  CHECK(cli::parse_layout("long") == Layout::kLongMultivariate);
  CHECK(cli::parse_layout("wide_univariate") == Layout::kWideUnivariate);
  CHECK_THROWS_AS(cli::parse_layout("tall"), InvalidConfig);
  const ThresholdTriple one = cli::parse_threshold_triple("0.25");
  CHECK(one.shape == 0.25);
  CHECK(one.magnitude == 0.25);
  const ThresholdTriple three = cli::parse_threshold_triple("0.1,0.2,0.3");
  CHECK(three.amplitude == 0.2);
  CHECK_THROWS_AS(cli::parse_threshold_triple("0.1,0.2"), InvalidConfig);
  CHECK_THROWS_AS(cli::parse_threshold_triple("2"), InvalidConfig);
}

TEST_CASE("simulate then detect") {
  const fs::path dir = scratch("simulate");
  REQUIRE(run({"simulate", "--model", "M1", "--seed", "7", "--out", (dir / "m1").string()}) == 0);
  const std::vector<std::string> truth = lines_of(slurp(dir / "m1" / "truth.csv"));
  CHECK(truth.size() == 11);
  CHECK(truth[0] == "curve_id,W_1,W_2,W_3,T,R_1,R_2,R_3");
  const auto sim = nlohmann::json::parse(slurp(dir / "m1" / "simulation.json"));
  CHECK(sim["outliers"].size() == 10);

  REQUIRE(run({"simulate", "--model", "M2", "--seed", "7", "--out", (dir / "m2").string()}) == 0);
  for (const std::string& row : lines_of(slurp(dir / "m2" / "truth.csv"))) {
    if (row.rfind("curve_id", 0) == 0) continue;
    std::vector<std::string> cells;
    std::istringstream s(row);
    for (std::string c; std::getline(s, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() >= 5);
    double t = -1.0;
    REQUIRE(parse_double(cells[4], t));
    CHECK(t >= 0.0);
    CHECK(t <= 0.9);
  }

  const fs::path detect_dir = dir / "detect";
  REQUIRE(run({"detect", "--input", (dir / "m1" / "data.csv").string(), "--seed", "3", "--out",
               detect_dir.string()}) == 0);
  const auto report = nlohmann::json::parse(slurp(detect_dir / "report.json"));
  CHECK(report["config"]["method"] == "FST_PRJ1");
  CHECK(report["data"]["n"] == 100);
  CHECK(report["data"]["d"] == 3);
  CHECK(report["flags"]["union"].size() >= 10);
  CHECK(fs::exists(detect_dir / "plot.csv"));
  CHECK_FALSE(fs::exists(detect_dir / "indices.csv"));

  const fs::path mar_dir = dir / "mar";
  REQUIRE(run({"detect", "--input", (dir / "m1" / "data.csv").string(), "--method", "FST_MAR", "--out",
               mar_dir.string()}) == 0);
  CHECK(lines_of(slurp(mar_dir / "indices.csv")).size() == 301);
}

TEST_CASE("benchmark, sweep and baselines commands") {
  const fs::path dir = scratch("bench");
  REQUIRE(run({"benchmark", "--model", "M1", "--reps", "3", "--directions", "10", "--out",
               (dir / "b").string()}) == 0);
  const std::vector<std::string> bench = lines_of(slurp(dir / "b" / "benchmark.csv"));
  REQUIRE(bench.size() == 2);
  CHECK(bench[1].rfind("M1,FST_PRJ1,union,3,", 0) == 0);

  REQUIRE(run({"sweep", "--model", "M1", "--reps", "2", "--directions", "10", "--q", "0.2", "--q",
               "0.4,0.3,0.3", "--out", (dir / "s").string()}) == 0);
  CHECK(lines_of(slurp(dir / "s" / "sweep.csv")).size() == 3);
  CHECK(lines_of(slurp(dir / "s" / "sweep_reps.csv")).size() == 5);

  REQUIRE(run({"baselines", "--reps", "3", "--directions", "10", "--out", (dir / "base").string()}) == 0);
  const Baselines b = cli::read_baselines_file((dir / "base" / "baselines.json").string());
  CHECK(b.combined >= b.shape);

  REQUIRE(run({"simulate", "--model", "M3", "--out", (dir / "m3").string()}) == 0);
  CHECK(run({"detect", "--input", (dir / "m3" / "data.csv").string(), "--method", "FST_PRJ", "--baselines",
             (dir / "base" / "baselines.json").string(), "--directions", "10", "--out",
             (dir / "prj").string()}) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "prj" / "report.json"));
  CHECK(report["thresholds"].contains("selection"));
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  std::string err;
  CHECK(run({"--help"}) == 0);
  CHECK(run({"detect"}, &err) == cli::kExitConfig);
  CHECK(run({"simulate", "--model", "M9", "--out", dir.string()}) == cli::kExitConfig);
  CHECK(run({"simulate", "--alpha", "1.5", "--out", dir.string()}) == cli::kExitConfig);

  std::ofstream(dir / "empty.csv").close();
  CHECK(run({"detect", "--input", (dir / "empty.csv").string(), "--out", dir.string()}) == cli::kExitParse);

  std::ofstream(dir / "bad.csv") << "id,t,v\na,0,1\na,1,oops\nb,0,1\nb,1,2\n";
  CHECK(run({"detect", "--input", (dir / "bad.csv").string(), "--out", dir.string()}, &err) == cli::kExitParse);
  CHECK(err.find("line 3") != std::string::npos);

  {
    std::ofstream flat(dir / "flat.csv");
    for (int i = 0; i < 6; ++i) flat << i << ",0,2\n" << i << ",1,2\n";
  }
  CHECK(run({"detect", "--input", (dir / "flat.csv").string(), "--method", "FST_MAR", "--out", dir.string()}) ==
        cli::kExitDegenerate);

  CHECK(run({"detect", "--input", (dir / "bad.csv").string(), "--method", "FST_PRJ", "--out", dir.string()}) ==
        cli::kExitConfig);
  CHECK(run({"detect", "--input", (dir / "missing.csv").string(), "--out", dir.string()}) == cli::kExitParse);
}
