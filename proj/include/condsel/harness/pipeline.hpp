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
#ifndef CONDSEL_HARNESS_PIPELINE_HPP_
#define CONDSEL_HARNESS_PIPELINE_HPP_

// Leave-one-out model selection.
//
// For run r the stream seed is seed + r. Each task's rows are drawn once per
// run and role: N_tgt rows when it is the held-out target, N_src rows when it
// serves as a source, so a source's representation is shared by every target
// of that run. For each target and model:
//
//   representations -> importance(target) -> D(target -> source) for every
//   source -> softmin weights p -> predicted rank sum_s p(s) R_m(s)
//
// and models are sorted by predicted rank. Prediction reads only source
// columns of the accuracy table; the target column is read afterwards, for
// scoring only.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "condsel/harness/bundle.hpp"
#include "condsel/metrics.hpp"
#include "condsel/rankagg.hpp"
#include "condsel/taskrep.hpp"

namespace condsel {

enum class SourceDistance { kDcd, kCosine, kJsd };

std::string SourceDistanceName(SourceDistance d);
SourceDistance ParseSourceDistance(const std::string& name);

struct RunConfig {
  double eta = kDefaultEta;
  double gamma = kDefaultGamma;
  double epsilon = kDefaultEpsilon;
  std::size_t k = kDefaultTopK;
  std::size_t n_src = 25;
  std::size_t n_tgt = 1;
  std::uint64_t seed = 0;
  std::size_t runs = 10;
  /// Column used by the ImageNet-ranking baseline; empty disables it.
  std::string imagenet_column;
  SourceDistance distance = SourceDistance::kDcd;

  /// Throws kParameter on non-positive temperatures, epsilon, sizes or runs.
  void Validate() const;
};

inline constexpr const char* kMethodOurs = "dcd";
inline constexpr const char* kMethodAvgRank = "avgrank";
inline constexpr const char* kMethodInb = "inb";

/// Task representations drawn for one run.
struct RunRepresentations {
  std::size_t run = 0;
  std::map<std::pair<std::string, std::string>, TaskRepresentation> as_target;
  std::map<std::pair<std::string, std::string>, TaskRepresentation> as_source;
};

RunRepresentations BuildRunRepresentations(const BundleSet& bundles,
                                           const std::vector<std::string>& models,
                                           const std::vector<std::string>& tasks,
                                           const RunConfig& cfg, std::size_t run);

struct TargetPrediction {
  std::string target;
  std::vector<std::string> sources;
  PredictedRanking ranking;
  std::map<std::string, std::map<std::string, double>> divergence;  // model -> source -> D
  std::map<std::string, SimilarityDistribution> weights;            // model -> p
};

/// Predicts the ranking of every table model on `target` from all other tasks.
/// Never reads the target's accuracy column.
TargetPrediction PredictForTarget(const RunRepresentations& reps, const AccuracyTable& table,
                                  const std::string& target, const RunConfig& cfg);

struct MethodRow {
  std::size_t run = 0;
  std::string method;
  MetricResult metric;
  PredictedRanking ranking;
};

struct EvalReport {
  RunConfig config;
  std::vector<std::string> models;
  std::vector<std::string> tasks;
  std::vector<MethodRow> rows;  // run-major, then table task order, then method
  std::map<std::string, MetricSummary> summary;

  std::vector<RunMetric> MetricsFor(const std::string& method) const;
};

/// Throws kCoverage when any (model, task) bundle is missing.
EvalReport LeaveOneOut(const BundleSet& bundles, const AccuracyTable& table, const RunConfig& cfg);

}  // namespace condsel

#endif  // CONDSEL_HARNESS_PIPELINE_HPP_
