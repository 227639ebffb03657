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
#ifndef CONDSEL_TASKREP_HPP_
#define CONDSEL_TASKREP_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "condsel/attribution.hpp"

namespace condsel {

inline constexpr double kDefaultEpsilon = 1e-8;
inline constexpr double kDefaultEta = 2.0;
inline constexpr double kAnalysisEta = 2.5;

/// Empirical mean conductance of one task under one model, plus its
/// max(||v||, eps)-normalized form.
struct TaskRepresentation {
  std::string model_id;
  std::string task_id;
  Vector v;
  Vector u;
  std::size_t n_samples = 0;
  double epsilon = kDefaultEpsilon;

  std::size_t block_count() const noexcept { return v.size(); }
};

struct ImportanceDistribution {
  Vector alpha;
  double eta = kDefaultEta;
};

/// Component-wise mean of `samples`. Throws kInsufficientData when empty,
/// kShape on ragged rows, kValidation on negative or non-finite entries.
TaskRepresentation MakeTaskRepresentation(const std::vector<Vector>& samples,
                                          std::string model_id, std::string task_id,
                                          double epsilon = kDefaultEpsilon);

Vector Normalize(std::span<const double> v, double epsilon = kDefaultEpsilon);

/// softmax(eta * u), the maximizer of <a, u> + H(a)/eta over the simplex.
ImportanceDistribution Importance(std::span<const double> u, double eta = kDefaultEta);

/// <a, u> + H(a)/eta with the convention 0 log 0 = 0.
double AlignmentObjective(std::span<const double> alpha, std::span<const double> u, double eta);

}  // namespace condsel

#endif  // CONDSEL_TASKREP_HPP_
