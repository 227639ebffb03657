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
#include "condsel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <fmt/format.h>

#include "condsel/error.hpp"

namespace condsel {

namespace {

void CheckUniverse(const PredictedRanking& predicted, const ModelRanks& truth, std::size_t k) {
  if (predicted.order.size() != truth.size()) {
    throw Error(ErrorKind::kShape, fmt::format("predicted ranking has {} models, truth has {}",
                                               predicted.order.size(), truth.size()));
  }
  for (const auto& m : predicted.order) {
    if (!truth.contains(m)) {
      throw Error(ErrorKind::kShape, fmt::format("model '{}' has no ground-truth rank", m));
    }
  }
  if (k < 1 || k > truth.size()) {
    throw Error(ErrorKind::kParameter, fmt::format("k={} outside [1, {}]", k, truth.size()));
  }
}

// Intersection members ordered by predicted position.
std::vector<std::string> OrderedIntersection(const PredictedRanking& predicted,
                                             const ModelRanks& truth, std::size_t k) {
  CheckUniverse(predicted, truth, k);
  std::vector<std::string> out;
  const double limit = static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& m = predicted.order[i];
    if (truth.at(m) <= limit) out.push_back(m);
  }
  return out;
}

double Dcg(std::span<const double> rels) {
  double dcg = 0.0;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    dcg += (std::exp2(rels[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

}  // namespace

std::vector<std::string> TopkIntersection(const PredictedRanking& predicted,
                                          const ModelRanks& truth, std::size_t k) {
  std::vector<std::string> out = OrderedIntersection(predicted, truth, k);
  std::sort(out.begin(), out.end());
  return out;
}

double NdcgAtK(const PredictedRanking& predicted, const ModelRanks& truth, std::size_t k) {
  const std::vector<std::string> inter = OrderedIntersection(predicted, truth, k);
  if (inter.size() < 2) return 0.0;
  Vector true_ranks;
  for (const auto& m : inter) true_ranks.push_back(truth.at(m));
  // Smallest true rank -> highest relevance |I|.
  Vector rel = TieAveragedRanks(true_ranks, /*descending=*/true);
  const double dcg = Dcg(rel);
  std::sort(rel.begin(), rel.end(), std::greater<>());
  return dcg / Dcg(rel);
}

TauResult KendallTauB(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kShape, "tau inputs differ in length");
  TauResult out;
  if (x.size() < 2) {
    out.degenerate = true;
    return out;
  }
  long concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;  // joint tie counts on neither side
      if (dx == 0.0) {
        ++tie_x;
      } else if (dy == 0.0) {
        ++tie_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double denom = std::sqrt(static_cast<double>(concordant + discordant + tie_x) *
                                 static_cast<double>(concordant + discordant + tie_y));
  if (denom == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.value = static_cast<double>(concordant - discordant) / denom;
  return out;
}

TauResult KendallTauAtK(const PredictedRanking& predicted, const ModelRanks& truth,
                        std::size_t k) {
  const std::vector<std::string> inter = OrderedIntersection(predicted, truth, k);
  if (inter.size() < 2) return {0.0, false};
  Vector pred_pos, true_rank;
  for (const auto& m : inter) {
    pred_pos.push_back(static_cast<double>(predicted.position(m)));
    true_rank.push_back(truth.at(m));
  }
  return KendallTauB(pred_pos, true_rank);
}

MetricResult Evaluate(const PredictedRanking& predicted, const ModelRanks& truth, std::size_t k,
                      const std::string& task_id) {
  MetricResult r;
  r.task_id = task_id;
  r.k = k;
  r.intersection_size = OrderedIntersection(predicted, truth, k).size();
  r.ndcg = NdcgAtK(predicted, truth, k);
  const TauResult tau = KendallTauAtK(predicted, truth, k);
  r.tau = tau.value;
  r.tau_degenerate = tau.degenerate;
  r.sum = r.ndcg + r.tau;
  return r;
}

double Spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw Error(ErrorKind::kShape, "spearman needs two non-empty vectors of equal length");
  }
  const Vector rx = TieAveragedRanks(xs, false);
  const Vector ry = TieAveragedRanks(ys, false);
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

Stat Summarize(const std::map<std::size_t, std::pair<double, std::size_t>>& per_run) {
  Stat s;
  for (const auto& [run, acc] : per_run) s.per_run.push_back(acc.first / static_cast<double>(acc.second));
  const double n = static_cast<double>(s.per_run.size());
  for (double v : s.per_run) s.mean += v;
  s.mean /= n;
  if (s.per_run.size() > 1) {
    double ss = 0.0;
    for (double v : s.per_run) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

}  // namespace

MetricSummary Aggregate(const std::vector<RunMetric>& rows) {
  if (rows.empty()) throw Error(ErrorKind::kInsufficientData, "nothing to aggregate");
  std::map<std::size_t, std::pair<double, std::size_t>> ndcg, tau, sum;
  for (const auto& r : rows) {
    auto add = [&](auto& acc, double v) {
      auto& slot = acc[r.run];
      slot.first += v;
      slot.second += 1;
    };
    add(ndcg, r.metric.ndcg);
    add(tau, r.metric.tau);
    add(sum, r.metric.sum);
  }
  MetricSummary out;
  out.runs = ndcg.size();
  out.ndcg = Summarize(ndcg);
  out.tau = Summarize(tau);
  out.sum = Summarize(sum);
  return out;
}

}  // namespace condsel
