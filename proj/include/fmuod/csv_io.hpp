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

// Dataset interchange.
//
// wide  : one curve per row, one column per grid point (univariate only).
// long  : columns curve_id, t_index, dim_1, ..., dim_d; every (curve_id, t_index) pair
//         must appear exactly once. Curves keep their order of first appearance.
//
// A header row is detected automatically: wide files when the first cell is not a number,
// long files when the t_index cell is not an integer.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fmuod/dataset.hpp"

namespace fmuod {

enum class Layout { kWideUnivariate, kLongMultivariate };

struct CsvOptions {
  char delimiter = ',';
};

struct ParsedDataset {
  MultivariateFunctionalDataset data;
  std::vector<std::string> curve_ids;
};

/// Throws ParseError (with the offending 1-based line) on empty input, ragged rows,
/// non-numeric cells, duplicate or missing lattice points.
ParsedDataset read_dataset(std::istream& in, Layout layout, const CsvOptions& options = {});
ParsedDataset read_dataset_file(const std::string& path, Layout layout,
                                const CsvOptions& options = {});

/// Long layout with a header row. Curve ids default to 0..n-1.
void write_long_csv(std::ostream& out, const MultivariateFunctionalDataset& data,
                    const std::vector<std::string>& curve_ids = {});

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-string parse; no surrounding whitespace allowed.
bool parse_double(std::string_view text, double& value);

}  // namespace fmuod
