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
#include "condsel/dcd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "condsel/error.hpp"

namespace condsel {

Vector RelativeDeviation(std::span<const double> v_target, std::span<const double> v_source,
                         double epsilon) {
  if (v_target.size() != v_source.size()) {
    throw Error(ErrorKind::kShape, fmt::format("relative deviation of {}-block and {}-block vectors",
                                               v_target.size(), v_source.size()));
  }
  if (!(epsilon > 0.0)) throw Error(ErrorKind::kParameter, "epsilon must be positive");
  Vector delta(v_target.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    delta[i] = std::fabs(v_target[i] - v_source[i]) / (std::fabs(v_target[i]) + epsilon);
  }
  return delta;
}

DivergenceRecord Divergence(const TaskRepresentation& target, const TaskRepresentation& source,
                            std::span<const double> alpha_target, double epsilon) {
  if (target.model_id != source.model_id) {
    throw Error(ErrorKind::kCrossModel,
                fmt::format("target '{}' is from model '{}' but source '{}' is from model '{}'",
                            target.task_id, target.model_id, source.task_id, source.model_id));
  }
  if (target.block_count() != source.block_count()) {
    throw Error(ErrorKind::kShape, fmt::format("target has {} blocks, source has {}",
                                               target.block_count(), source.block_count()));
  }
  if (alpha_target.size() != target.block_count()) {
    throw Error(ErrorKind::kShape, "importance distribution length differs from block count");
  }
  DivergenceRecord rec;
  rec.model_id = target.model_id;
  rec.target_task = target.task_id;
  rec.source_task = source.task_id;
  rec.delta = RelativeDeviation(target.v, source.v, epsilon);
  for (std::size_t i = 0; i < rec.delta.size(); ++i) {
    rec.value += alpha_target[i] * rec.delta[i];
    if (target.v[i] == 0.0 && source.v[i] != 0.0) rec.zero_target_blocks.push_back(i);
  }
  return rec;
}

DivergenceRecord Divergence(const TaskRepresentation& target, const TaskRepresentation& source,
                            double eta, double epsilon) {
  return Divergence(target, source, Importance(target.u, eta).alpha, epsilon);
}

SimilarityDistribution SimilarityWeights(const std::map<std::string, double>& divergences,
                                         double gamma, std::string target_task) {
  if (divergences.empty()) {
    throw Error(ErrorKind::kInsufficientData, "similarity weights need at least one source");
  }
  if (!(gamma > 0.0)) throw Error(ErrorKind::kParameter, "gamma must be positive");
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [task, d] : divergences) {
    if (!std::isfinite(d)) {
      throw Error(ErrorKind::kNumeric, fmt::format("divergence to '{}' is not finite", task));
    }
    lo = std::min(lo, d);
  }
  SimilarityDistribution out;
  out.target_task = std::move(target_task);
  out.gamma = gamma;
  double z = 0.0;
  for (const auto& [task, d] : divergences) {
    const double s = std::exp(-gamma * (d - lo));
    out.weights[task] = s;
    z += s;
  }
  for (auto& [task, w] : out.weights) w /= z;
  return out;
}

bool SalientSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

SalientSet MakeSalientSet(std::span<const double> u, std::size_t k) {
  if (k < 1 || k > u.size()) {
    throw Error(ErrorKind::kParameter,
                fmt::format("salient set size k={} outside [1, {}]", k, u.size()));
  }
  Vector sorted(u.begin(), u.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   sorted.end(), std::greater<>());
  SalientSet s;
  s.k = k;
  s.threshold = sorted[k - 1];
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] >= s.threshold) s.indices.push_back(i);
  }
  return s;
}

SetRestrictedResult SetRestrictedDivergence(std::span<const double> delta,
                                            std::span<const double> alpha, const SalientSet& s) {
  if (delta.size() != alpha.size()) {
    throw Error(ErrorKind::kShape, "delta and alpha lengths differ");
  }
  SetRestrictedResult out;
  double inside = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (s.contains(i)) {
      inside += alpha[i] * delta[i];
    } else {
      out.tail += alpha[i];
      out.residual += alpha[i] * delta[i];
    }
  }
  const double mass = 1.0 - out.tail;
  if (!(mass > 1e-12)) {
    throw Error(ErrorKind::kDegenerateMass,
                fmt::format("salient set carries importance mass {:.3g}", mass));
  }
  out.restricted = inside / mass;
  return out;
}

TailBoundReport VerifyTailBound(std::span<const double> u, double eta, std::size_t k,
                                std::span<const double> delta) {
  const std::size_t d = u.size();
  if (k < 1 || k > d) {
    throw Error(ErrorKind::kParameter, fmt::format("k={} outside [1, {}]", k, d));
  }
  TailBoundReport rep;
  rep.k = k;
  if (k == d) return rep;  // no (k+1)-th entry
  rep.applicable = true;

  Vector sorted(u.begin(), u.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  rep.gap = sorted[k - 1] - sorted[k];

  const Vector alpha = Importance(u, eta).alpha;
  const SalientSet s = MakeSalientSet(u, k);
  for (std::size_t i = 0; i < d; ++i) {
    if (!s.contains(i)) rep.tail += alpha[i];
  }
  rep.bound = static_cast<double>(d - k) / static_cast<double>(k) * std::exp(-eta * rep.gap);
  if (rep.gap > 0.0) {
    rep.lemma_checked = true;
    rep.lemma_holds = rep.tail <= rep.bound + kBoundTolerance;
  }

  if (!delta.empty()) {
    if (delta.size() != d) throw Error(ErrorKind::kShape, "delta length differs from u");
    rep.relaxation_checked = true;
    rep.delta_max = *std::max_element(delta.begin(), delta.end());
    for (std::size_t i = 0; i < d; ++i) rep.divergence += alpha[i] * delta[i];
    const SetRestrictedResult sr = SetRestrictedDivergence(delta, alpha, s);
    rep.restricted = sr.restricted;
    rep.residual = sr.residual;
    const double t = sr.tail;
    const double scale = std::max(1.0, rep.delta_max);
    rep.decomposition_error = std::fabs(rep.divergence - ((1.0 - t) * sr.restricted + sr.residual));
    rep.decomposition_holds = rep.decomposition_error <= kBoundTolerance * scale;
    rep.residual_holds =
        sr.residual >= -kBoundTolerance && sr.residual <= rep.delta_max * t + kBoundTolerance * scale;
    rep.gap_bound_holds = std::fabs(rep.divergence - sr.restricted) <=
                          2.0 * rep.delta_max * t + kBoundTolerance * scale;
  }
  return rep;
}

}  // namespace condsel
