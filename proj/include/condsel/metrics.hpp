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
#ifndef CONDSEL_METRICS_HPP_
#define CONDSEL_METRICS_HPP_

// Ranking quality on the top-k intersection
//   I = { m : predicted position <= k } ∩ { m : true rank <= k }.
// Both NDCG@k and tau@k are defined as 0 when |I| < 2.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "condsel/rankagg.hpp"

namespace condsel {

inline constexpr std::size_t kDefaultTopK = 5;

struct MetricResult {
  std::string task_id;
  std::size_t k = kDefaultTopK;
  std::size_t intersection_size = 0;
  double ndcg = 0.0;
  double tau = 0.0;
  double sum = 0.0;
  bool tau_degenerate = false;  // one side fully tied on I
};

/// Sorted model ids. Throws kParameter for k outside [1, |M|] and kShape when
/// the two rankings cover different models.
std::vector<std::string> TopkIntersection(const PredictedRanking& predicted,
                                          const ModelRanks& truth, std::size_t k);

/// Relevance of m in I is its descending rank by true rank within I (best
/// gets |I|, ties share the average). Gain 2^rel - 1, discount log2(i + 1).
double NdcgAtK(const PredictedRanking& predicted, const ModelRanks& truth, std::size_t k);

struct TauResult {
  double value = 0.0;
  bool degenerate = false;
};

/// Kendall tau-b, (C - D) / sqrt((C + D + Tx)(C + D + Ty)); 0 and degenerate
/// when fewer than two items or either side is constant.
TauResult KendallTauB(std::span<const double> x, std::span<const double> y);

TauResult KendallTauAtK(const PredictedRanking& predicted, const ModelRanks& truth,
                        std::size_t k);

MetricResult Evaluate(const PredictedRanking& predicted, const ModelRanks& truth, std::size_t k,
                      const std::string& task_id);

/// Pearson correlation of tie-averaged ranks. NaN when either input is constant.
double Spearman(std::span<const double> xs, std::span<const double> ys);

struct RunMetric {
  std::size_t run = 0;
  MetricResult metric;
};

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation over runs, 0 for one run
  std::vector<double> per_run;
};

struct MetricSummary {
  std::size_t runs = 0;
  Stat ndcg;
  Stat tau;
  Stat sum;
};

/// Mean over tasks within each run, then mean and sample std over runs.
MetricSummary Aggregate(const std::vector<RunMetric>& rows);

}  // namespace condsel

#endif  // CONDSEL_METRICS_HPP_
