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

#include "buffernet/instance_io.h"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "buffernet/errors.h"
#include "json.hpp"

namespace buffernet {
namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string>& KnownFields() {
  static const std::set<std::string> fields = {
      "version", "names", "liabilities", "portfolio", "external", "costs"};
  return fields;
}

const Json& RequireField(const Json& root, const std::string& field,
                         const std::string& source) {
  const auto it = root.find(field);
  if (it == root.end()) {
    throw ParseError(source + ": missing required field \"" + field + "\"");
  }
  return *it;
}

double NumberAt(const Json& value, const std::string& where,
                const std::string& source) {
  if (!value.is_number()) {
    throw ParseError(source + ": " + where + " is not a number");
  }
  return value.get<double>();
}

Eigen::VectorXd ParseVector(const Json& value, const std::string& field,
                            const std::string& source) {
  if (!value.is_array()) {
    throw ParseError(source + ": field \"" + field + "\" must be an array");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(value.size()));
  for (size_t i = 0; i < value.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = NumberAt(
        value[i], field + "[" + std::to_string(i) + "]", source);
  }
  return out;
}

Eigen::MatrixXd ParseMatrix(const Json& value, const std::string& field,
                            const std::string& source) {
  if (!value.is_array()) {
    throw ParseError(source + ": field \"" + field +
                     "\" must be an array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(value.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd out;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = value[static_cast<size_t>(i)];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!row.is_array()) {
      throw ParseError(source + ": " + where + " must be an array");
    }
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      out.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(source + ": " + where + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(cols));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = NumberAt(row[static_cast<size_t>(j)],
                           where + "[" + std::to_string(j) + "]", source);
    }
  }
  if (cols < 0) out.resize(0, 0);
  return out;
}

Json VectorJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json MatrixJson(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

std::string Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' ||
                         text[end - 1] == '\r')) {
    --end;
  }
  return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> SplitCells(std::string_view line) {
  std::vector<std::string> cells;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      return cells;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double ParseCell(const std::string& cell, const std::string& source, int line,
                 size_t column) {
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE) {
    throw ParseError(source + ":" + std::to_string(line) + ": column " +
                     std::to_string(column + 1) + " value '" + cell +
                     "' is not a number");
  }
  return value;
}

std::string FormatExact(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// Reads a "name,values..." table whose rows must follow `names`.
Eigen::MatrixXd ReadNamedTable(const CsvTable& table, const std::string& source,
                               const std::vector<std::string>* names,
                               std::vector<std::string>* names_out) {
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto cols = static_cast<Eigen::Index>(table.header.size()) - 1;
  if (cols < 0) throw ParseError(source + ": empty header");
  if (names != nullptr && static_cast<Eigen::Index>(names->size()) != n) {
    throw ParseError(source + ": has " + std::to_string(n) +
                     " rows, expected " + std::to_string(names->size()));
  }
  Eigen::MatrixXd out(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<size_t>(i)];
    const int line = table.line_numbers[static_cast<size_t>(i)];
    if (names != nullptr && row[0] != (*names)[static_cast<size_t>(i)]) {
      throw ParseError(source + ":" + std::to_string(line) + ": bank '" +
                       row[0] + "' does not match expected '" +
                       (*names)[static_cast<size_t>(i)] + "'");
    }
    if (names_out != nullptr) names_out->push_back(row[0]);
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = ParseCell(row[static_cast<size_t>(j + 1)], source, line,
                            static_cast<size_t>(j + 1));
    }
  }
  return out;
}

}  // namespace

std::string InstanceToJson(const NetworkInstance& instance) {
  Json root;
  root["version"] = kInstanceSchemaVersion;
  root["names"] = instance.names;
  root["liabilities"] = MatrixJson(instance.liabilities);
  root["portfolio"] = MatrixJson(instance.portfolio);
  root["external"] = VectorJson(instance.external);
  root["costs"] = VectorJson(instance.costs);
  return root.dump() + "\n";
}

NetworkInstance InstanceFromJson(std::string_view text,
                                 const std::string& source) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!root.is_object()) {
    throw ParseError(source + ": top level must be a JSON object");
  }
  for (const auto& [key, unused] : root.items()) {
    if (!KnownFields().contains(key)) {
      throw ParseError(source + ": unknown field \"" + key + "\"");
    }
  }
  const Json& version = RequireField(root, "version", source);
  if (!version.is_number_integer() ||
      version.get<int64_t>() != kInstanceSchemaVersion) {
    throw SchemaVersionError(source + ": unsupported schema version " +
                             version.dump() + " (expected " +
                             std::to_string(kInstanceSchemaVersion) + ")");
  }

  NetworkInstance instance;
  const Json& names = RequireField(root, "names", source);
  if (!names.is_array()) {
    throw ParseError(source + ": field \"names\" must be an array");
  }
  for (size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) {
      throw ParseError(source + ": names[" + std::to_string(i) +
                       "] is not a string");
    }
    instance.names.push_back(names[i].get<std::string>());
  }
  instance.liabilities = ParseMatrix(
      RequireField(root, "liabilities", source), "liabilities", source);
  instance.portfolio = ParseMatrix(RequireField(root, "portfolio", source),
                                   "portfolio", source);
  instance.external =
      ParseVector(RequireField(root, "external", source), "external", source);
  instance.costs =
      ParseVector(RequireField(root, "costs", source), "costs", source);
  return instance;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return buffer.str();
}

void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + temp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("failed writing " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw IoError("cannot move output into " + path.string());
  }
}

CsvTable ParseCsv(std::string_view text, const std::string& source) {
  CsvTable table;
  size_t start = 0;
  int line_number = 0;
  bool have_header = false;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_number;
    start = end + 1;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells = SplitCells(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ParseError(source + ": ragged row " +
                       std::to_string(table.rows.size() + 1) + " (line " +
                       std::to_string(line_number) + ") has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_number);
  }
  if (!have_header) throw ParseError(source + ": missing header row");
  return table;
}

CsvTable ReadCsvFile(const std::filesystem::path& path) {
  return ParseCsv(ReadTextFile(path), path.string());
}

NetworkInstance LoadInstance(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    return InstanceFromJson(ReadTextFile(path), path.string());
  }
  if (!std::filesystem::is_directory(path)) {
    throw IoError(path.string() +
                  " is neither a .json file nor a CSV bundle directory");
  }
  NetworkInstance instance;
  const auto liabilities_path = path / "liabilities.csv";
  const CsvTable liabilities = ReadCsvFile(liabilities_path);
  instance.liabilities = ReadNamedTable(liabilities, liabilities_path.string(),
                                        nullptr, &instance.names);
  for (size_t j = 0; j < instance.names.size(); ++j) {
    if (j + 1 >= liabilities.header.size() ||
        liabilities.header[j + 1] != instance.names[j]) {
      throw ParseError(liabilities_path.string() +
                       ": header names must match the row names in order");
    }
  }
  if (liabilities.header.size() != instance.names.size() + 1) {
    throw ParseError(liabilities_path.string() +
                     ": liabilities must be square (header lists " +
                     std::to_string(liabilities.header.size() - 1) +
                     " banks, " + std::to_string(instance.names.size()) +
                     " rows)");
  }
  instance.portfolio = LoadNamedMatrix(path / "portfolio.csv", instance.names);
  instance.external = LoadNamedVector(path / "external.csv", instance.names);
  instance.costs = LoadNamedVector(path / "costs.csv", instance.names);
  return instance;
}

void SaveInstance(const NetworkInstance& instance,
                  const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    WriteFileAtomically(path, InstanceToJson(instance));
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw IoError("cannot create directory " + path.string());

  const int n = instance.num_banks();
  std::string text = "bank";
  for (const auto& name : instance.names) text += "," + name;
  text += "\n";
  for (int i = 0; i < n; ++i) {
    text += instance.names[i];
    for (int j = 0; j < n; ++j) {
      text += "," + FormatExact(instance.liabilities(i, j));
    }
    text += "\n";
  }
  WriteFileAtomically(path / "liabilities.csv", text);

  text = "bank";
  for (int k = 0; k < instance.num_assets(); ++k) {
    text += ",asset_" + std::to_string(k + 1);
  }
  text += "\n";
  for (int i = 0; i < n; ++i) {
    text += instance.names[i];
    for (int k = 0; k < instance.num_assets(); ++k) {
      text += "," + FormatExact(instance.portfolio(i, k));
    }
    text += "\n";
  }
  WriteFileAtomically(path / "portfolio.csv", text);

  auto write_vector = [&](const char* file, const char* column,
                          const Eigen::VectorXd& v) {
    std::string body = std::string("bank,") + column + "\n";
    for (int i = 0; i < n; ++i) {
      body += instance.names[i] + "," + FormatExact(v[i]) + "\n";
    }
    WriteFileAtomically(path / file, body);
  };
  write_vector("external.csv", "external", instance.external);
  write_vector("costs.csv", "cost", instance.costs);
}

MarginalTable LoadMarginalTable(const std::filesystem::path& path) {
  const CsvTable table = ReadCsvFile(path);
  const std::string source = path.string();
  const auto& header = table.header;
  if (header.size() < 3 || header[0] != "name" ||
      header[1] != "interbank_assets" || header[2] != "interbank_liabilities") {
    throw ParseError(source +
                     ": header must start with "
                     "name,interbank_assets,interbank_liabilities");
  }
  size_t first_holding = 3;
  const bool has_equity = header.size() > 3 && header[3] == "equity";
  if (has_equity) first_holding = 4;
  for (size_t c = first_holding; c < header.size(); ++c) {
    if (header[c].rfind("holding_", 0) != 0) {
      throw ParseError(source + ": unexpected column \"" + header[c] + "\"");
    }
  }

  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto m = static_cast<Eigen::Index>(header.size() - first_holding);
  MarginalTable out;
  out.marginals.row_totals.resize(n);
  out.marginals.col_totals.resize(n);
  if (has_equity) out.equity.resize(n);
  out.holdings.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<size_t>(i)];
    const int line = table.line_numbers[static_cast<size_t>(i)];
    out.marginals.names.push_back(row[0]);
    out.marginals.col_totals[i] = ParseCell(row[1], source, line, 1);
    out.marginals.row_totals[i] = ParseCell(row[2], source, line, 2);
    if (has_equity) out.equity[i] = ParseCell(row[3], source, line, 3);
    for (Eigen::Index k = 0; k < m; ++k) {
      const size_t c = first_holding + static_cast<size_t>(k);
      out.holdings(i, k) = ParseCell(row[c], source, line, c);
    }
  }
  return out;
}

Eigen::VectorXd LoadNamedVector(const std::filesystem::path& path,
                                const std::vector<std::string>& names) {
  const CsvTable table = ReadCsvFile(path);
  if (table.header.size() != 2) {
    throw ParseError(path.string() + ": expected two columns (name,value)");
  }
  return ReadNamedTable(table, path.string(), &names, nullptr).col(0);
}

Eigen::MatrixXd LoadNamedMatrix(const std::filesystem::path& path,
                                const std::vector<std::string>& names) {
  return ReadNamedTable(ReadCsvFile(path), path.string(), &names, nullptr);
}

}  // namespace buffernet
