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
#ifndef CONDSEL_ANALYSIS_HPP_
#define CONDSEL_ANALYSIS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "condsel/attribution.hpp"
#include "condsel/rankagg.hpp"
#include "condsel/taskrep.hpp"

namespace condsel {

enum class GapKind { kPerformance, kConductance, kSemantic };

std::string GapKindName(GapKind kind);

/// Symmetric task-by-task matrix with a zero diagonal.
struct GapMatrix {
  GapKind kind = GapKind::kPerformance;
  std::string model_id;
  std::vector<std::string> tasks;
  Matrix values;

  /// Strict upper triangle, row-major.
  Vector UpperTriangle() const;
};

/// G(t, s) = |a_m(t) - a_m(s)|.
GapMatrix PerformanceGap(const AccuracyTable& table, const std::string& model);

/// G(t, s) = (D(t -> s) + D(s -> t)) / 2, each direction with its own target
/// importance at temperature eta. All representations must share a model.
GapMatrix ConductanceGap(const std::vector<TaskRepresentation>& reps, double eta = kAnalysisEta,
                         double epsilon = kDefaultEpsilon);

/// Spearman correlation of the two strict upper triangles. Throws
/// kInsufficientData for fewer than 3 tasks and kShape when task lists differ.
double ProxyReliability(const GapMatrix& truth, const GapMatrix& proxy);

/// Pairwise Spearman of vectorized gap matrices; unit diagonal.
Matrix ModelCorrelationMatrix(const std::vector<GapMatrix>& gaps);

enum class AblationMetric { kCosine, kJsd };

/// Symmetric stand-ins for D: 1 - cos(v_t, v_s), or the base-2 Jensen-Shannon
/// divergence of softmax(v_t) and softmax(v_s).
double AblationDistance(std::span<const double> v_target, std::span<const double> v_source,
                        AblationMetric metric, double epsilon = kDefaultEpsilon);

Vector Softmax(std::span<const double> v);

/// Base-2 JSD of two distributions; terms with zero mass contribute 0.
double JensenShannon(std::span<const double> p, std::span<const double> q);

}  // namespace condsel

#endif  // CONDSEL_ANALYSIS_HPP_
