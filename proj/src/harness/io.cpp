/* Copyright 2026 The Condsel Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "condsel/harness/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "condsel/error.hpp"
#include "condsel/harness/bundle.hpp"

namespace condsel {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, fmt::format("cannot write '{}'", path.string()));
  out << content;
}

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::vector<std::string>> SplitCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(Trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

double ParseCell(const std::string& cell, const std::string& origin, std::size_t line,
                 std::size_t col) {
  if (cell.empty()) {
    throw Error(ErrorKind::kValidation,
                fmt::format("{}: line {} column {} is empty", origin, line, col));
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != cell.size()) {
    throw Error(ErrorKind::kParse,
                fmt::format("{}: line {} column {}: '{}' is not a number", origin, line, col, cell));
  }
  return v;
}

}  // namespace

AccuracyTable ParseAccuracyCsv(const std::string& text, const std::string& origin) {
  const auto rows = SplitCsv(text);
  if (rows.empty()) throw Error(ErrorKind::kParse, origin + ": empty accuracy table");
  const auto& header = rows.front();
  if (header.size() < 2) throw Error(ErrorKind::kParse, origin + ": header lists no tasks");
  std::vector<std::string> tasks(header.begin() + 1, header.end());
  std::vector<std::string> models;
  std::vector<Vector> acc;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(ErrorKind::kValidation,
                  fmt::format("{}: line {} has {} cells, header has {} (missing cell?)", origin,
                              r + 1, row.size(), header.size()));
    }
    models.push_back(row[0]);
    Vector vals;
    for (std::size_t c = 1; c < row.size(); ++c) {
      const double v = ParseCell(row[c], origin, r + 1, c + 1);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::kValidation,
                    fmt::format("{}: line {} column {}: accuracy {} outside [0, 1]", origin, r + 1,
                                c + 1, row[c]));
      }
      vals.push_back(v);
    }
    acc.push_back(std::move(vals));
  }
  if (models.empty()) throw Error(ErrorKind::kParse, origin + ": no model rows");
  return AccuracyTable(std::move(models), std::move(tasks), std::move(acc));
}

AccuracyTable LoadAccuracyTable(const fs::path& path) {
  return ParseAccuracyCsv(ReadFile(path), path.string());
}

std::string SerializeAccuracyCsv(const AccuracyTable& table) {
  std::string out = "model";
  for (const auto& t : table.tasks()) out += "," + t;
  out += "\n";
  for (const auto& m : table.models()) {
    out += m;
    for (const auto& t : table.tasks()) out += "," + FormatShortest(table.at(m, t));
    out += "\n";
  }
  return out;
}

std::string SerializeLabeledMatrixCsv(const std::vector<std::string>& labels, const Matrix& m,
                                      const std::string& corner) {
  std::string out = corner;
  for (const auto& l : labels) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += labels[i];
    for (std::size_t j = 0; j < labels.size(); ++j) out += fmt::format(",{:.10g}", m(i, j));
    out += "\n";
  }
  return out;
}

std::string SerializeGapMatrixCsv(const GapMatrix& gap) {
  return SerializeLabeledMatrixCsv(gap.tasks, gap.values, "task");
}

GapMatrix ParseGapMatrixCsv(const std::string& text, GapKind kind, std::string model_id,
                            const std::string& origin) {
  const auto rows = SplitCsv(text);
  if (rows.size() < 2) throw Error(ErrorKind::kParse, origin + ": gap matrix has no rows");
  GapMatrix g;
  g.kind = kind;
  g.model_id = std::move(model_id);
  g.tasks.assign(rows.front().begin() + 1, rows.front().end());
  const std::size_t n = g.tasks.size();
  if (rows.size() != n + 1) {
    throw Error(ErrorKind::kShape, fmt::format("{}: {} tasks but {} rows", origin, n, rows.size() - 1));
  }
  g.values = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != n + 1 || row[0] != g.tasks[i]) {
      throw Error(ErrorKind::kShape,
                  fmt::format("{}: row {} must be labeled '{}' with {} values", origin, i + 2,
                              g.tasks[i], n));
    }
    for (std::size_t j = 0; j < n; ++j) g.values(i, j) = ParseCell(row[j + 1], origin, i + 2, j + 2);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g.values(i, i) != 0.0) {
      throw Error(ErrorKind::kValidation, fmt::format("{}: diagonal entry {} is not 0", origin, i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(g.values(i, j) - g.values(j, i)) > 1e-12) {
        throw Error(ErrorKind::kValidation,
                    fmt::format("{}: entries ({}, {}) and ({}, {}) differ", origin, i, j, j, i));
      }
    }
  }
  return g;
}

GapMatrix LoadGapMatrix(const fs::path& path, GapKind kind, std::string model_id) {
  return ParseGapMatrixCsv(ReadFile(path), kind, std::move(model_id), path.string());
}

std::string SerializeNetwork(const ToyNetwork& net) {
  json doc;
  doc["format"] = "condsel-toynet";
  doc["version"] = 1;
  doc["input_dim"] = net.input_dim();
  json blocks = json::array();
  for (const auto& b : net.blocks()) {
    json jb;
    jb["kind"] = BlockKindName(b.kind);
    json w = json::array();
    for (std::size_t r = 0; r < b.weight.rows(); ++r) {
      const auto row = b.weight.row(r);
      w.push_back(std::vector<double>(row.begin(), row.end()));
    }
    jb["weight"] = std::move(w);
    jb["bias"] = b.bias;
    blocks.push_back(std::move(jb));
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump(1) + "\n";
}

ToyNetwork ParseNetwork(const std::string& text, const std::string& origin) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", std::string{}) != "condsel-toynet") {
      throw Error(ErrorKind::kParse, origin + ": not a condsel-toynet document");
    }
    std::vector<BlockSpec> blocks;
    for (const auto& jb : doc.at("blocks")) {
      BlockSpec b;
      b.kind = ParseBlockKind(jb.at("kind").get<std::string>());
      b.weight = Matrix::FromRows(jb.at("weight").get<std::vector<Vector>>());
      b.bias = jb.at("bias").get<Vector>();
      blocks.push_back(std::move(b));
    }
    ToyNetwork net(std::move(blocks));
    if (doc.contains("input_dim") && doc.at("input_dim").get<std::size_t>() != net.input_dim()) {
      throw Error(ErrorKind::kShape, origin + ": input_dim disagrees with the first block");
    }
    return net;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, fmt::format("{}: {}", origin, e.what()));
  }
}

ToyNetwork LoadNetwork(const fs::path& path) { return ParseNetwork(ReadFile(path), path.string()); }

void SaveNetwork(const ToyNetwork& net, const fs::path& path) {
  WriteFile(path, SerializeNetwork(net));
}

}  // namespace condsel
