// Copyright 2026 The BufferNet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BUFFERNET_INSTANCE_IO_H_
#define BUFFERNET_INSTANCE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "buffernet/instances.h"
#include "buffernet/network.h"

namespace buffernet {

inline constexpr int kInstanceSchemaVersion = 1;

// Canonical JSON:
//   {"version":1,"names":[...],"liabilities":[[...]],"portfolio":[[...]],
//    "external":[...],"costs":[...]}
// Doubles are written with round-trip precision, so text -> instance -> text
// is the identity.
std::string InstanceToJson(const NetworkInstance& instance);

// Throws ParseError (naming the offending field) or SchemaVersionError.
// `source` labels error messages.
NetworkInstance InstanceFromJson(std::string_view text,
                                 const std::string& source = "<json>");

// A path ending in ".json" is a JSON file; anything else is a directory
// holding liabilities.csv, portfolio.csv, external.csv and costs.csv.
NetworkInstance LoadInstance(const std::filesystem::path& path);
void SaveInstance(const NetworkInstance& instance,
                  const std::filesystem::path& path);

// Comma-separated table with a header row. Cells are trimmed; no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // 1-based source line of each row
};

// Throws ParseError on ragged rows (with the row's line number).
CsvTable ParseCsv(std::string_view text, const std::string& source);
CsvTable ReadCsvFile(const std::filesystem::path& path);

// Bank-level ingestion table:
//   name,interbank_assets,interbank_liabilities[,equity][,holding_1..]
// Interbank liabilities become the row totals of the reconstructed matrix
// and interbank assets the column totals.
struct MarginalTable {
  MarginalData marginals;
  Eigen::VectorXd equity;    // empty when the column is absent
  Eigen::MatrixXd holdings;  // n x 0 when no holding columns are present
};

MarginalTable LoadMarginalTable(const std::filesystem::path& path);

// Two-column table "name,<value>" aligned with `names` (same order).
Eigen::VectorXd LoadNamedVector(const std::filesystem::path& path,
                                const std::vector<std::string>& names);

// Table "name,<asset...>" aligned with `names`.
Eigen::MatrixXd LoadNamedMatrix(const std::filesystem::path& path,
                                const std::vector<std::string>& names);

std::string ReadTextFile(const std::filesystem::path& path);

// Writes through a temporary sibling and renames it into place.
void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents);

}  // namespace buffernet

#endif  // BUFFERNET_INSTANCE_IO_H_
