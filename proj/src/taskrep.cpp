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
#include "condsel/taskrep.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "condsel/error.hpp"

namespace condsel {

TaskRepresentation MakeTaskRepresentation(const std::vector<Vector>& samples,
                                          std::string model_id, std::string task_id,
                                          double epsilon) {
  if (samples.empty()) {
    throw Error(ErrorKind::kInsufficientData,
                fmt::format("no conductance samples for ({}, {})", model_id, task_id));
  }
  if (!(epsilon > 0.0)) throw Error(ErrorKind::kParameter, "epsilon must be positive");
  const std::size_t d = samples.front().size();
  if (d == 0) throw Error(ErrorKind::kShape, "conductance vectors are empty");

  Vector sum(d, 0.0);
  for (std::size_t r = 0; r < samples.size(); ++r) {
    if (samples[r].size() != d) {
      throw Error(ErrorKind::kShape, fmt::format("sample {} has {} blocks, expected {}", r,
                                                 samples[r].size(), d));
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double g = samples[r][i];
      if (!std::isfinite(g) || g < 0.0) {
        throw Error(ErrorKind::kValidation,
                    fmt::format("sample {} block {} is {} (must be finite and >= 0)", r, i, g));
      }
      sum[i] += g;
    }
  }
  const double n = static_cast<double>(samples.size());
  for (double& s : sum) s /= n;

  TaskRepresentation rep;
  rep.model_id = std::move(model_id);
  rep.task_id = std::move(task_id);
  rep.u = Normalize(sum, epsilon);
  rep.v = std::move(sum);
  rep.n_samples = samples.size();
  rep.epsilon = epsilon;
  return rep;
}

Vector Normalize(std::span<const double> v, double epsilon) {
  double ss = 0.0;
  for (double x : v) ss += x * x;
  const double denom = std::max(std::sqrt(ss), epsilon);
  Vector u(v.begin(), v.end());
  for (double& x : u) x /= denom;
  return u;
}

ImportanceDistribution Importance(std::span<const double> u, double eta) {
  if (u.empty()) throw Error(ErrorKind::kShape, "importance of an empty vector");
  if (!(eta > 0.0)) throw Error(ErrorKind::kParameter, "eta must be positive");
  const double top = *std::max_element(u.begin(), u.end());
  ImportanceDistribution out;
  out.eta = eta;
  out.alpha.resize(u.size());
  double z = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.alpha[i] = std::exp(eta * (u[i] - top));
    z += out.alpha[i];
  }
  for (double& a : out.alpha) a /= z;
  return out;
}

double AlignmentObjective(std::span<const double> alpha, std::span<const double> u, double eta) {
  double align = 0.0;
  double entropy = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    align += alpha[i] * u[i];
    if (alpha[i] > 0.0) entropy -= alpha[i] * std::log(alpha[i]);
  }
  return align + entropy / eta;
}

}  // namespace condsel
