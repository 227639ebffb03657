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
#include "condsel/rankagg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "condsel/error.hpp"

namespace condsel {

Vector TieAveragedRanks(std::span<const double> values, bool descending) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  Vector ranks(values.size());
  for (std::size_t start = 0; start < idx.size();) {
    std::size_t end = start + 1;
    while (end < idx.size() && values[idx[end]] == values[idx[start]]) ++end;
    // positions start+1 .. end share their mean
    const double avg = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t p = start; p < end; ++p) ranks[idx[p]] = avg;
    start = end;
  }
  return ranks;
}

AccuracyTable::AccuracyTable(std::vector<std::string> models, std::vector<std::string> tasks,
                             std::vector<Vector> acc)
    : models_(std::move(models)), tasks_(std::move(tasks)), acc_(std::move(acc)) {
  auto check_unique = [](const std::vector<std::string>& ids, const char* what) {
    std::set<std::string> seen;
    for (const auto& id : ids) {
      if (id.empty()) throw Error(ErrorKind::kValidation, fmt::format("empty {} id", what));
      if (!seen.insert(id).second) {
        throw Error(ErrorKind::kValidation, fmt::format("duplicate {} id '{}'", what, id));
      }
    }
  };
  check_unique(models_, "model");
  check_unique(tasks_, "task");
  if (acc_.size() != models_.size()) {
    throw Error(ErrorKind::kShape, fmt::format("accuracy table has {} rows for {} models",
                                               acc_.size(), models_.size()));
  }
  for (std::size_t m = 0; m < acc_.size(); ++m) {
    if (acc_[m].size() != tasks_.size()) {
      throw Error(ErrorKind::kShape, fmt::format("model '{}' has {} accuracies for {} tasks",
                                                 models_[m], acc_[m].size(), tasks_.size()));
    }
    for (std::size_t t = 0; t < tasks_.size(); ++t) {
      const double a = acc_[m][t];
      if (!std::isfinite(a) || a < 0.0 || a > 1.0) {
        throw Error(ErrorKind::kValidation, fmt::format("accuracy of '{}' on '{}' is {} (outside [0, 1])",
                                                        models_[m], tasks_[t], a));
      }
    }
  }
}

bool AccuracyTable::has_task(const std::string& task) const {
  return std::find(tasks_.begin(), tasks_.end(), task) != tasks_.end();
}

bool AccuracyTable::has_model(const std::string& model) const {
  return std::find(models_.begin(), models_.end(), model) != models_.end();
}

std::size_t AccuracyTable::task_index(const std::string& task) const {
  auto it = std::find(tasks_.begin(), tasks_.end(), task);
  if (it == tasks_.end()) throw Error(ErrorKind::kLookup, fmt::format("unknown task '{}'", task));
  return static_cast<std::size_t>(it - tasks_.begin());
}

std::size_t AccuracyTable::model_index(const std::string& model) const {
  auto it = std::find(models_.begin(), models_.end(), model);
  if (it == models_.end()) throw Error(ErrorKind::kLookup, fmt::format("unknown model '{}'", model));
  return static_cast<std::size_t>(it - models_.begin());
}

Vector AccuracyTable::column(const std::string& task) const {
  const std::size_t t = task_index(task);
  if (observer_) observer_(task);
  Vector col(models_.size());
  for (std::size_t m = 0; m < models_.size(); ++m) col[m] = acc_[m][t];
  return col;
}

double AccuracyTable::at(const std::string& model, const std::string& task) const {
  const std::size_t t = task_index(task);
  const std::size_t m = model_index(model);
  if (observer_) observer_(task);
  return acc_[m][t];
}

ModelRanks GroundTruthRanks(const AccuracyTable& table, const std::string& task) {
  const Vector col = table.column(task);
  const Vector ranks = TieAveragedRanks(col, /*descending=*/true);
  ModelRanks out;
  for (std::size_t m = 0; m < ranks.size(); ++m) out[table.models()[m]] = ranks[m];
  return out;
}

RankTable RankTable::FromAccuracy(const AccuracyTable& table,
                                  const std::vector<std::string>& tasks) {
  RankTable rt;
  for (const auto& t : tasks) rt.Set(t, GroundTruthRanks(table, t));
  return rt;
}

const ModelRanks& RankTable::task(const std::string& task) const {
  auto it = by_task_.find(task);
  if (it == by_task_.end()) {
    throw Error(ErrorKind::kLookup, fmt::format("no ranks for task '{}'", task));
  }
  return it->second;
}

double RankTable::rank(const std::string& model, const std::string& task_id) const {
  const ModelRanks& r = task(task_id);
  auto it = r.find(model);
  if (it == r.end()) {
    throw Error(ErrorKind::kLookup,
                fmt::format("no rank for model '{}' on task '{}'", model, task_id));
  }
  return it->second;
}

std::size_t PredictedRanking::position(const std::string& model) const {
  auto it = std::find(order.begin(), order.end(), model);
  if (it == order.end()) {
    throw Error(ErrorKind::kLookup, fmt::format("model '{}' not in ranking", model));
  }
  return static_cast<std::size_t>(it - order.begin()) + 1;
}

double PredictedRank(const SimilarityDistribution& p, const RankTable& ranks,
                     const std::string& model) {
  double r = 0.0;
  for (const auto& [source, w] : p.weights) r += w * ranks.rank(model, source);
  return r;
}

PredictedRanking Rank(const std::map<std::string, double>& scores, std::string target_task,
                      double tie_tolerance) {
  if (scores.empty()) throw Error(ErrorKind::kInsufficientData, "nothing to rank");
  std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
  for (const auto& [model, s] : items) {
    if (!std::isfinite(s)) {
      throw Error(ErrorKind::kNumeric, fmt::format("score of '{}' is not finite", model));
    }
  }
  // `items` is already in id order (std::map), so stable_sort keeps exact
  // ties lexicographic.
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  for (std::size_t start = 0; start < items.size();) {
    std::size_t end = start + 1;
    while (end < items.size() && items[end].second - items[end - 1].second <= tie_tolerance) ++end;
    std::sort(items.begin() + static_cast<std::ptrdiff_t>(start),
              items.begin() + static_cast<std::ptrdiff_t>(end),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    start = end;
  }
  PredictedRanking out;
  out.target_task = std::move(target_task);
  out.scores = scores;
  out.order.reserve(items.size());
  for (auto& [model, s] : items) out.order.push_back(model);
  return out;
}

PredictedRanking BaselineInb(const AccuracyTable& table, const std::string& reference_task,
                             std::string target_task) {
  if (!table.has_task(reference_task)) {
    throw Error(ErrorKind::kLookup,
                fmt::format("reference column '{}' missing from accuracy table", reference_task));
  }
  return Rank(GroundTruthRanks(table, reference_task), std::move(target_task));
}

PredictedRanking BaselineAvgRank(const AccuracyTable& table, const std::string& exclude_task) {
  std::vector<std::string> sources;
  for (const auto& t : table.tasks()) {
    if (t != exclude_task) sources.push_back(t);
  }
  return BaselineAvgRank(table, sources, exclude_task);
}

PredictedRanking BaselineAvgRank(const AccuracyTable& table,
                                 const std::vector<std::string>& sources,
                                 std::string target_task) {
  if (sources.empty()) {
    throw Error(ErrorKind::kInsufficientData, "average-rank baseline needs at least one source");
  }
  std::map<std::string, double> mean;
  for (const auto& m : table.models()) mean[m] = 0.0;
  for (const auto& s : sources) {
    for (const auto& [m, r] : GroundTruthRanks(table, s)) mean[m] += r;
  }
  for (auto& [m, r] : mean) r /= static_cast<double>(sources.size());
  return Rank(mean, std::move(target_task));
}

}  // namespace condsel
