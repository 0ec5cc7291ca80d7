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

#include "fmuod/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "fmuod/errors.hpp"

namespace fmuod {

namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> cells;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line, char delimiter) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    const std::string_view cell = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
    std::string_view t = trim(cell);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
    cells.emplace_back(t);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::vector<Row> read_rows(std::istream& in, char delimiter) {
  std::vector<Row> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    rows.push_back({number, split(line, delimiter)});
  }
  if (rows.empty()) throw ParseError("input contains no data", 0);
  return rows;
}

bool parse_index(std::string_view text, long long& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

double cell_value(const Row& row, std::size_t col) {
  double v = 0.0;
  if (!parse_double(row.cells[col], v) || !std::isfinite(v)) {
    throw ParseError("column " + std::to_string(col + 1) + ": '" + row.cells[col] +
                         "' is not a finite number",
                     row.line);
  }
  return v;
}

ParsedDataset read_wide(const std::vector<Row>& rows) {
  double probe = 0.0;
  const std::size_t first = parse_double(rows.front().cells.front(), probe) ? 0 : 1;
  if (first >= rows.size()) throw ParseError("input has a header but no data rows", rows.front().line);
  const std::size_t k = rows[first].cells.size();
  if (k < 2) throw ParseError("a curve needs at least 2 grid points", rows[first].line);

  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size() - first), static_cast<Eigen::Index>(k));
  std::vector<std::string> ids;
  for (std::size_t r = first; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (row.cells.size() != k) {
      throw ParseError("expected " + std::to_string(k) + " columns, found " +
                           std::to_string(row.cells.size()),
                       row.line);
    }
    const auto i = static_cast<Eigen::Index>(r - first);
    for (std::size_t c = 0; c < k; ++c) values(i, static_cast<Eigen::Index>(c)) = cell_value(row, c);
    ids.push_back(std::to_string(i));
  }
  std::vector<Eigen::MatrixXd> margins{std::move(values)};
  return {MultivariateFunctionalDataset(std::move(margins), Grid::uniform(static_cast<Eigen::Index>(k))),
          std::move(ids)};
}

ParsedDataset read_long(const std::vector<Row>& rows) {
  long long probe = 0;
  const Row& head = rows.front();
  const bool has_header = head.cells.size() < 2 || !parse_index(head.cells[1], probe);
  const std::size_t first = has_header ? 1 : 0;
  if (first >= rows.size()) throw ParseError("input has a header but no data rows", head.line);

  const std::size_t width = rows[first].cells.size();
  if (width < 3) {
    throw ParseError("long layout needs columns curve_id, t_index and at least one dimension",
                     rows[first].line);
  }
  const std::size_t d = width - 2;
  std::vector<std::string> dim_names;
  if (has_header && head.cells.size() == width) {
    dim_names.assign(head.cells.begin() + 2, head.cells.end());
  } else {
    for (std::size_t j = 0; j < d; ++j) dim_names.push_back("dim_" + std::to_string(j + 1));
  }

  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> id_slot;
  std::vector<std::size_t> id_line;
  std::map<long long, std::size_t> t_slot;
  struct Cell {
    std::size_t curve;
    long long t;
    std::size_t line;
    std::vector<double> values;
  };
  std::vector<Cell> cells;
  cells.reserve(rows.size());

  for (std::size_t r = first; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (row.cells.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, found " +
                           std::to_string(row.cells.size()),
                       row.line);
    }
    long long t = 0;
    if (!parse_index(row.cells[1], t) || t < 0) {
      throw ParseError("t_index '" + row.cells[1] + "' is not a non-negative integer", row.line);
    }
    if (row.cells[0].empty()) throw ParseError("empty curve_id", row.line);
    auto [it, inserted] = id_slot.try_emplace(row.cells[0], ids.size());
    if (inserted) {
      ids.push_back(row.cells[0]);
      id_line.push_back(row.line);
    }
    t_slot.emplace(t, 0);
    Cell cell{it->second, t, row.line, std::vector<double>(d)};
    for (std::size_t j = 0; j < d; ++j) cell.values[j] = cell_value(row, j + 2);
    cells.push_back(std::move(cell));
  }

  std::size_t next = 0;
  for (auto& [t, slot] : t_slot) slot = next++;
  const auto n = static_cast<Eigen::Index>(ids.size());
  const auto k = static_cast<Eigen::Index>(t_slot.size());
  if (k < 2) throw ParseError("a curve needs at least 2 grid points", rows[first].line);

  std::vector<Eigen::MatrixXd> margins(d, Eigen::MatrixXd(n, k));
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, k, false);
  for (const Cell& c : cells) {
    const auto i = static_cast<Eigen::Index>(c.curve);
    const auto p = static_cast<Eigen::Index>(t_slot.at(c.t));
    if (seen(i, p)) {
      throw ParseError("duplicate entry for curve '" + ids[c.curve] + "' at t_index " +
                           std::to_string(c.t),
                       c.line);
    }
    seen(i, p) = true;
    for (std::size_t j = 0; j < d; ++j) margins[j](i, p) = c.values[j];
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [t, slot] : t_slot) {
      if (!seen(i, static_cast<Eigen::Index>(slot))) {
        throw ParseError("incomplete lattice: curve '" + ids[static_cast<std::size_t>(i)] +
                             "' (first seen here) has no row for t_index " + std::to_string(t),
                         id_line[static_cast<std::size_t>(i)]);
      }
    }
  }
  return {MultivariateFunctionalDataset(std::move(margins), Grid::uniform(k), std::move(dim_names)),
          std::move(ids)};
}

}  // namespace

bool parse_double(std::string_view text, double& value) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

ParsedDataset read_dataset(std::istream& in, Layout layout, const CsvOptions& options) {
  const std::vector<Row> rows = read_rows(in, options.delimiter);
  return layout == Layout::kWideUnivariate ? read_wide(rows) : read_long(rows);
}

ParsedDataset read_dataset_file(const std::string& path, Layout layout, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return read_dataset(in, layout, options);
}

void write_long_csv(std::ostream& out, const MultivariateFunctionalDataset& data,
                    const std::vector<std::string>& curve_ids) {
  out << "curve_id,t_index";
  for (Eigen::Index j = 0; j < data.d(); ++j) {
    out << ',' << data.dim_names()[static_cast<std::size_t>(j)];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const std::string id =
        curve_ids.empty() ? std::to_string(i) : curve_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index p = 0; p < data.k(); ++p) {
      out << id << ',' << p;
      for (Eigen::Index j = 0; j < data.d(); ++j) out << ',' << format_double(data.margin(j)(i, p));
      out << '\n';
    }
  }
}

}  // namespace fmuod
