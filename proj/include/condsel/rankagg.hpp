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
#ifndef CONDSEL_RANKAGG_HPP_
#define CONDSEL_RANKAGG_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "condsel/attribution.hpp"
#include "condsel/dcd.hpp"

namespace condsel {

using ModelRanks = std::map<std::string, double>;

/// Average ranks (1-based). `descending` gives rank 1 to the largest value.
Vector TieAveragedRanks(std::span<const double> values, bool descending);

/// Model-by-task accuracy matrix. Every column read goes through `column()` or
/// `at()`, which report the task id to an optional observer; the leave-one-out
/// harness relies on this to prove it never reads a held-out column early.
class AccuracyTable {
 public:
  using ColumnObserver = std::function<void(const std::string& task)>;

  /// acc[m][t] is model m's accuracy on task t. Throws kValidation on duplicate
  /// ids or values outside [0, 1], kShape on ragged rows.
  AccuracyTable(std::vector<std::string> models, std::vector<std::string> tasks,
                std::vector<Vector> acc);

  const std::vector<std::string>& models() const noexcept { return models_; }
  const std::vector<std::string>& tasks() const noexcept { return tasks_; }
  bool has_task(const std::string& task) const;
  bool has_model(const std::string& model) const;

  /// Accuracies on `task`, in models() order. Throws kLookup if unknown.
  Vector column(const std::string& task) const;
  double at(const std::string& model, const std::string& task) const;

  void set_observer(ColumnObserver observer) { observer_ = std::move(observer); }

 private:
  std::size_t task_index(const std::string& task) const;
  std::size_t model_index(const std::string& model) const;

  std::vector<std::string> models_;
  std::vector<std::string> tasks_;
  std::vector<Vector> acc_;
  ColumnObserver observer_;
};

/// Ranks of every model on `task`: best accuracy -> 1, ties averaged.
ModelRanks GroundTruthRanks(const AccuracyTable& table, const std::string& task);

/// Per-task model ranks for a chosen set of tasks.
class RankTable {
 public:
  RankTable() = default;
  static RankTable FromAccuracy(const AccuracyTable& table, const std::vector<std::string>& tasks);

  void Set(const std::string& task, ModelRanks ranks) { by_task_[task] = std::move(ranks); }
  bool has_task(const std::string& task) const { return by_task_.contains(task); }
  const ModelRanks& task(const std::string& task) const;
  double rank(const std::string& model, const std::string& task) const;

 private:
  std::map<std::string, ModelRanks> by_task_;
};

struct PredictedRanking {
  std::string target_task;
  std::map<std::string, double> scores;
  std::vector<std::string> order;

  /// 1-based position of `model` in order. Throws kLookup if absent.
  std::size_t position(const std::string& model) const;
};

/// Scores closer than this are treated as tied and ordered by model id.
inline constexpr double kScoreTieTolerance = 1e-7;

/// sum_s p(s) R_m(s).
double PredictedRank(const SimilarityDistribution& p, const RankTable& ranks,
                     const std::string& model);

/// Ascending sort of scores. Runs of consecutive scores whose neighbouring gaps
/// are all <= tie_tolerance form one tie group, ordered lexicographically.
PredictedRanking Rank(const std::map<std::string, double>& scores,
                      std::string target_task = {},
                      double tie_tolerance = kScoreTieTolerance);

/// Descending accuracy on `reference_task`; independent of the target.
PredictedRanking BaselineInb(const AccuracyTable& table, const std::string& reference_task,
                             std::string target_task = {});

/// Mean rank over every task except `exclude_task` (pass empty to keep all).
PredictedRanking BaselineAvgRank(const AccuracyTable& table, const std::string& exclude_task);

/// Mean rank over an explicit source list.
PredictedRanking BaselineAvgRank(const AccuracyTable& table,
                                 const std::vector<std::string>& sources,
                                 std::string target_task);

}  // namespace condsel

#endif  // CONDSEL_RANKAGG_HPP_
