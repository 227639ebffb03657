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
#ifndef CONDSEL_HARNESS_BUNDLE_HPP_
#define CONDSEL_HARNESS_BUNDLE_HPP_

// Conductance bundle: the per-(model, task) interchange file.
//
// One UTF-8 JSON object per file, keys in lexicographic order at every level:
//
//   {
//     "block_count": 4,
//     "extraction": {"baseline": "zero", "extractor_version": "...", "steps": 50},
//     "model_id": "RN50_openai",
//     "objective": "l2norm",
//     "samples": [
//       [0.12, 0.5, 1.25, 0.031],
//       ...
//     ],
//     "task_id": "cifar10"
//   }
//
// Numbers are written in shortest round-trip form, so save -> load -> save is
// byte-stable. `extraction` may carry extra string fields (e.g. a preprocessing
// tag); they are preserved.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "condsel/attribution.hpp"

namespace condsel {

inline constexpr const char* kObjectiveTag = "l2norm";

struct ExtractionMeta {
  int steps = 50;
  std::string baseline = "zero";
  std::string extractor_version;
  std::map<std::string, std::string> extra;

  friend bool operator==(const ExtractionMeta&, const ExtractionMeta&) = default;
};

struct ConductanceBundle {
  std::string model_id;
  std::string task_id;
  std::size_t block_count = 0;
  std::string objective = kObjectiveTag;
  ExtractionMeta extraction;
  std::vector<Vector> samples;  // N rows of d entries

  std::size_t sample_count() const noexcept { return samples.size(); }
  friend bool operator==(const ConductanceBundle&, const ConductanceBundle&) = default;
};

/// Throws kValidation naming the offending row/column.
void ValidateBundle(const ConductanceBundle& bundle);

std::string SerializeBundle(const ConductanceBundle& bundle);

/// `origin` is used in error messages only.
ConductanceBundle ParseBundle(const std::string& text, const std::string& origin = "<memory>");

ConductanceBundle LoadBundle(const std::filesystem::path& path);

/// Writes through a temporary file and renames it into place.
void SaveBundle(const ConductanceBundle& bundle, const std::filesystem::path& path);

/// Canonical file name "<model>__<task>.json".
std::string BundleFileName(const std::string& model_id, const std::string& task_id);

/// Uniform row subsample without replacement, rows returned in ascending
/// source-index order. Throws kInsufficientData when n > N, kParameter when n < 1.
ConductanceBundle Subsample(const ConductanceBundle& bundle, std::size_t n, std::uint64_t key);

/// Indices chosen by Subsample (ascending).
std::vector<std::size_t> SubsampleIndices(std::size_t total, std::size_t n, std::uint64_t key);

/// Stream key for the rows a task contributes in one run. `role` separates the
/// target draw from the source draw.
std::uint64_t SubsampleKey(std::uint64_t run_seed, const std::string& task_id,
                           const std::string& role);

/// All bundles of an experiment, indexed by (model, task).
class BundleSet {
 public:
  void Add(ConductanceBundle bundle);
  bool contains(const std::string& model, const std::string& task) const;
  const ConductanceBundle& get(const std::string& model, const std::string& task) const;

  std::vector<std::string> models() const;
  std::vector<std::string> tasks() const;
  std::size_t size() const noexcept { return bundles_.size(); }

  /// Throws kCoverage listing every missing (model, task) pair.
  void CheckCoverage(const std::vector<std::string>& models,
                     const std::vector<std::string>& tasks) const;

  /// Loads every *.json in `dir` (sorted by file name).
  static BundleSet LoadDirectory(const std::filesystem::path& dir);
  void SaveDirectory(const std::filesystem::path& dir) const;

  auto begin() const { return bundles_.begin(); }
  auto end() const { return bundles_.end(); }

 private:
  std::map<std::pair<std::string, std::string>, ConductanceBundle> bundles_;
};

/// Shortest round-trip decimal form of a finite double.
std::string FormatShortest(double value);

}  // namespace condsel

#endif  // CONDSEL_HARNESS_BUNDLE_HPP_
