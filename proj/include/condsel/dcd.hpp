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
#ifndef CONDSEL_DCD_HPP_
#define CONDSEL_DCD_HPP_

// Directional conductance divergence and the salient-set machinery used to
// check it against its hard, set-restricted counterpart.
//
//   delta_i   = |v_t,i - v_s,i| / (|v_t,i| + eps)
//   D(t -> s) = sum_i alpha_t,i * delta_i
//
// D is conditioned on the target t: both the denominator and the weights come
// from t, so D(t -> s) != D(s -> t) in general.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "condsel/taskrep.hpp"

namespace condsel {

inline constexpr double kDefaultGamma = 5.0;

struct DivergenceRecord {
  std::string model_id;
  std::string source_task;
  std::string target_task;
  Vector delta;
  double value = 0.0;
  /// Blocks where the target is exactly zero but the source is not; their
  /// delta is v_s / eps and usually dominates D.
  std::vector<std::size_t> zero_target_blocks;
};

Vector RelativeDeviation(std::span<const double> v_target, std::span<const double> v_source,
                         double epsilon = kDefaultEpsilon);

/// Throws kCrossModel when model ids differ and kShape when block counts differ.
DivergenceRecord Divergence(const TaskRepresentation& target, const TaskRepresentation& source,
                            std::span<const double> alpha_target,
                            double epsilon = kDefaultEpsilon);

/// Computes alpha from target.u at temperature eta.
DivergenceRecord Divergence(const TaskRepresentation& target, const TaskRepresentation& source,
                            double eta, double epsilon = kDefaultEpsilon);

struct SimilarityDistribution {
  std::string target_task;
  std::map<std::string, double> weights;
  double gamma = kDefaultGamma;
};

/// p(s) proportional to exp(-gamma (D_s - min D)).
SimilarityDistribution SimilarityWeights(const std::map<std::string, double>& divergences,
                                         double gamma = kDefaultGamma,
                                         std::string target_task = {});

struct SalientSet {
  std::size_t k = 0;
  std::vector<std::size_t> indices;  // ascending, 0-based
  double threshold = 0.0;            // k-th largest entry of u

  bool contains(std::size_t i) const;
};

/// { i : u_i >= k-th largest u }. Ties at the threshold are all included.
SalientSet MakeSalientSet(std::span<const double> u, std::size_t k);

struct SetRestrictedResult {
  double restricted = 0.0;  // d_k: expectation of delta under alpha renormalized on S
  double tail = 0.0;        // t: alpha mass outside S
  double residual = 0.0;    // r: sum over i outside S of alpha_i delta_i
};

/// Throws kDegenerateMass when 1 - t <= 1e-12.
SetRestrictedResult SetRestrictedDivergence(std::span<const double> delta,
                                            std::span<const double> alpha, const SalientSet& s);

struct TailBoundReport {
  std::size_t k = 0;
  bool applicable = false;     // false when k >= d (gap undefined)
  double gap = 0.0;            // u_(k) - u_(k+1) over sorted u
  double tail = 0.0;
  double bound = 0.0;          // (d - k)/k * exp(-eta * gap)
  bool lemma_checked = false;  // only when gap > 0
  bool lemma_holds = true;

  // Relaxation checks, present when a delta vector was supplied.
  bool relaxation_checked = false;
  double divergence = 0.0;
  double restricted = 0.0;
  double residual = 0.0;
  double delta_max = 0.0;  // B
  double decomposition_error = 0.0;
  bool decomposition_holds = true;
  bool residual_holds = true;
  bool gap_bound_holds = true;

  bool ok() const {
    return lemma_holds && decomposition_holds && residual_holds && gap_bound_holds;
  }
};

inline constexpr double kBoundTolerance = 1e-12;

/// Checks the tail-mass bound for softmax(eta u) and, when `delta` is non-empty,
/// D = (1 - t) d_k + r, 0 <= r <= B t and |D - d_k| <= 2 B t with B = max delta.
/// Inequalities are tested with kBoundTolerance slack.
TailBoundReport VerifyTailBound(std::span<const double> u, double eta, std::size_t k,
                                std::span<const double> delta = {});

}  // namespace condsel

#endif  // CONDSEL_DCD_HPP_
