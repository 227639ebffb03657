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
#include "condsel/harness/bundle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "condsel/error.hpp"
#include "condsel/rng.hpp"

namespace condsel {

namespace fs = std::filesystem;
using nlohmann::json;

std::string FormatShortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorKind::kNumeric, "cannot format number");
  std::string s(buf, end);
  // Keep integral values visibly real so they re-parse as floats.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void ValidateBundle(const ConductanceBundle& b) {
  const std::string where = fmt::format("bundle ({}, {})", b.model_id, b.task_id);
  if (b.model_id.empty() || b.task_id.empty()) {
    throw Error(ErrorKind::kValidation, where + ": empty model_id or task_id");
  }
  if (b.objective != kObjectiveTag) {
    throw Error(ErrorKind::kValidation,
                fmt::format("{}: objective '{}' is not '{}'", where, b.objective, kObjectiveTag));
  }
  if (b.block_count == 0) throw Error(ErrorKind::kValidation, where + ": block_count is 0");
  if (b.samples.empty()) throw Error(ErrorKind::kValidation, where + ": no samples");
  for (std::size_t r = 0; r < b.samples.size(); ++r) {
    if (b.samples[r].size() != b.block_count) {
      throw Error(ErrorKind::kValidation,
                  fmt::format("{}: row {} has {} entries, block_count is {}", where, r,
                              b.samples[r].size(), b.block_count));
    }
    for (std::size_t c = 0; c < b.block_count; ++c) {
      const double v = b.samples[r][c];
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kValidation,
                    fmt::format("{}: row {} column {} is not finite", where, r, c));
      }
      if (v < 0.0) {
        throw Error(ErrorKind::kValidation,
                    fmt::format("{}: row {} column {} is negative ({})", where, r, c, v));
      }
    }
  }
}

std::string SerializeBundle(const ConductanceBundle& b) {
  ValidateBundle(b);
  auto str = [](const std::string& s) { return json(s).dump(); };
  std::map<std::string, std::string> extraction;  // sorted keys -> rendered values
  for (const auto& [k, v] : b.extraction.extra) extraction[k] = str(v);
  extraction["baseline"] = str(b.extraction.baseline);
  extraction["extractor_version"] = str(b.extraction.extractor_version);
  extraction["steps"] = std::to_string(b.extraction.steps);

  std::ostringstream out;
  out << "{\n";
  out << "  \"block_count\": " << b.block_count << ",\n";
  out << "  \"extraction\": {";
  bool first = true;
  for (const auto& [k, v] : extraction) {
    out << (first ? "" : ", ") << str(k) << ": " << v;
    first = false;
  }
  out << "},\n";
  out << "  \"model_id\": " << str(b.model_id) << ",\n";
  out << "  \"objective\": " << str(b.objective) << ",\n";
  out << "  \"samples\": [\n";
  for (std::size_t r = 0; r < b.samples.size(); ++r) {
    out << "    [";
    for (std::size_t c = 0; c < b.samples[r].size(); ++c) {
      out << (c ? ", " : "") << FormatShortest(b.samples[r][c]);
    }
    out << "]" << (r + 1 < b.samples.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"task_id\": " << str(b.task_id) << "\n";
  out << "}\n";
  return out.str();
}

ConductanceBundle ParseBundle(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, fmt::format("{}: {}", origin, e.what()));
  }
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorKind::kParse, fmt::format("{}: {}", origin, msg));
  };
  if (!doc.is_object()) throw fail("top level is not an object");
  for (const char* key : {"block_count", "extraction", "model_id", "objective", "samples", "task_id"}) {
    if (!doc.contains(key)) throw fail(fmt::format("missing field '{}'", key));
  }
  ConductanceBundle b;
  try {
    b.model_id = doc.at("model_id").get<std::string>();
    b.task_id = doc.at("task_id").get<std::string>();
    b.objective = doc.at("objective").get<std::string>();
    const json& bc = doc.at("block_count");
    if (!bc.is_number_unsigned()) throw fail("block_count must be a non-negative integer");
    b.block_count = bc.get<std::size_t>();
    const json& ex = doc.at("extraction");
    if (!ex.is_object()) throw fail("extraction must be an object");
    for (const auto& [k, v] : ex.items()) {
      if (k == "steps") {
        b.extraction.steps = v.get<int>();
      } else if (k == "baseline") {
        b.extraction.baseline = v.get<std::string>();
      } else if (k == "extractor_version") {
        b.extraction.extractor_version = v.get<std::string>();
      } else {
        b.extraction.extra[k] = v.get<std::string>();
      }
    }
    const json& rows = doc.at("samples");
    if (!rows.is_array()) throw fail("samples must be an array");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array()) throw fail(fmt::format("samples row {} is not an array", r));
      Vector row;
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (!rows[r][c].is_number()) {
          throw Error(ErrorKind::kValidation,
                      fmt::format("{}: row {} column {} is not a number", origin, r, c));
        }
        row.push_back(rows[r][c].get<double>());
      }
      b.samples.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw fail(e.what());
  }
  try {
    ValidateBundle(b);
  } catch (const Error& e) {
    throw Error(ErrorKind::kValidation, fmt::format("{}: {}", origin, e.what()));
  }
  return b;
}

ConductanceBundle LoadBundle(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseBundle(ss.str(), path.string());
}

namespace {

void WriteAtomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, fmt::format("cannot write '{}'", tmp.string()));
    out << content;
    if (!out) throw Error(ErrorKind::kIo, fmt::format("short write to '{}'", tmp.string()));
  }
  fs::rename(tmp, path);
}

}  // namespace

void SaveBundle(const ConductanceBundle& bundle, const fs::path& path) {
  WriteAtomically(path, SerializeBundle(bundle));
}

std::string BundleFileName(const std::string& model_id, const std::string& task_id) {
  return model_id + "__" + task_id + ".json";
}

std::vector<std::size_t> SubsampleIndices(std::size_t total, std::size_t n, std::uint64_t key) {
  if (n < 1) throw Error(ErrorKind::kParameter, "subsample size must be >= 1");
  if (n > total) {
    throw Error(ErrorKind::kInsufficientData,
                fmt::format("asked for {} rows but only {} are available", n, total));
  }
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  CounterRng rng(key);
  // Partial Fisher-Yates: positions [0, n) end up a uniform n-subset.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

ConductanceBundle Subsample(const ConductanceBundle& bundle, std::size_t n, std::uint64_t key) {
  ConductanceBundle out = bundle;
  out.samples.clear();
  for (std::size_t i : SubsampleIndices(bundle.sample_count(), n, key)) {
    out.samples.push_back(bundle.samples[i]);
  }
  return out;
}

std::uint64_t SubsampleKey(std::uint64_t run_seed, const std::string& task_id,
                           const std::string& role) {
  return CombineKey(CombineKey(run_seed, HashString(task_id)), HashString(role));
}

void BundleSet::Add(ConductanceBundle bundle) {
  ValidateBundle(bundle);
  auto key = std::make_pair(bundle.model_id, bundle.task_id);
  if (bundles_.contains(key)) {
    throw Error(ErrorKind::kValidation, fmt::format("duplicate bundle for ({}, {})",
                                                    bundle.model_id, bundle.task_id));
  }
  bundles_.emplace(std::move(key), std::move(bundle));
}

bool BundleSet::contains(const std::string& model, const std::string& task) const {
  return bundles_.contains({model, task});
}

const ConductanceBundle& BundleSet::get(const std::string& model, const std::string& task) const {
  auto it = bundles_.find({model, task});
  if (it == bundles_.end()) {
    throw Error(ErrorKind::kCoverage, fmt::format("no bundle for ({}, {})", model, task));
  }
  return it->second;
}

std::vector<std::string> BundleSet::models() const {
  std::set<std::string> s;
  for (const auto& [key, b] : bundles_) s.insert(key.first);
  return {s.begin(), s.end()};
}

std::vector<std::string> BundleSet::tasks() const {
  std::set<std::string> s;
  for (const auto& [key, b] : bundles_) s.insert(key.second);
  return {s.begin(), s.end()};
}

void BundleSet::CheckCoverage(const std::vector<std::string>& models,
                              const std::vector<std::string>& tasks) const {
  std::vector<std::string> missing;
  for (const auto& m : models) {
    for (const auto& t : tasks) {
      if (!contains(m, t)) missing.push_back(fmt::format("({}, {})", m, t));
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size(); ++i) list += (i ? ", " : "") + missing[i];
    throw Error(ErrorKind::kCoverage,
                fmt::format("{} bundle(s) missing: {}", missing.size(), list));
  }
}

BundleSet BundleSet::LoadDirectory(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::kIo, fmt::format("'{}' is not a directory", dir.string()));
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  BundleSet set;
  for (const auto& f : files) set.Add(LoadBundle(f));
  return set;
}

void BundleSet::SaveDirectory(const fs::path& dir) const {
  fs::create_directories(dir);
  for (const auto& [key, b] : bundles_) SaveBundle(b, dir / BundleFileName(key.first, key.second));
}

}  // namespace condsel
