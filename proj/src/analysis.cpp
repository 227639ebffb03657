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
#include "condsel/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "condsel/dcd.hpp"
#include "condsel/error.hpp"
#include "condsel/metrics.hpp"

namespace condsel {

std::string GapKindName(GapKind kind) {
  switch (kind) {
    case GapKind::kPerformance: return "performance";
    case GapKind::kConductance: return "conductance";
    case GapKind::kSemantic: return "semantic";
  }
  return "unknown";
}

Vector GapMatrix::UpperTriangle() const {
  Vector out;
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = i + 1; j < values.cols(); ++j) out.push_back(values(i, j));
  }
  return out;
}

GapMatrix PerformanceGap(const AccuracyTable& table, const std::string& model) {
  if (!table.has_model(model)) {
    throw Error(ErrorKind::kLookup, fmt::format("unknown model '{}'", model));
  }
  GapMatrix g;
  g.kind = GapKind::kPerformance;
  g.model_id = model;
  g.tasks = table.tasks();
  const std::size_t n = g.tasks.size();
  Vector acc(n);
  for (std::size_t t = 0; t < n; ++t) acc[t] = table.at(model, g.tasks[t]);
  g.values = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.values(i, j) = std::fabs(acc[i] - acc[j]);
  }
  return g;
}

GapMatrix ConductanceGap(const std::vector<TaskRepresentation>& reps, double eta, double epsilon) {
  if (reps.size() < 2) {
    throw Error(ErrorKind::kInsufficientData, "conductance gap needs at least two tasks");
  }
  GapMatrix g;
  g.kind = GapKind::kConductance;
  g.model_id = reps.front().model_id;
  const std::size_t n = reps.size();
  std::vector<Vector> alphas;
  for (const auto& r : reps) {
    g.tasks.push_back(r.task_id);
    alphas.push_back(Importance(r.u, eta).alpha);
  }
  Matrix directed(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s != t) directed(t, s) = Divergence(reps[t], reps[s], alphas[t], epsilon).value;
    }
  }
  g.values = Matrix(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s != t) g.values(t, s) = 0.5 * (directed(t, s) + directed(s, t));
    }
  }
  return g;
}

double ProxyReliability(const GapMatrix& truth, const GapMatrix& proxy) {
  if (truth.tasks != proxy.tasks) {
    throw Error(ErrorKind::kShape, "gap matrices are over different task lists");
  }
  if (truth.tasks.size() < 3) {
    throw Error(ErrorKind::kInsufficientData, "proxy reliability needs at least three tasks");
  }
  return Spearman(truth.UpperTriangle(), proxy.UpperTriangle());
}

Matrix ModelCorrelationMatrix(const std::vector<GapMatrix>& gaps) {
  if (gaps.size() < 2) {
    throw Error(ErrorKind::kInsufficientData, "model correlation needs at least two models");
  }
  for (const auto& g : gaps) {
    if (g.tasks != gaps.front().tasks) {
      throw Error(ErrorKind::kShape,
                  fmt::format("model '{}' gap matrix uses a different task set", g.model_id));
    }
  }
  std::vector<Vector> vecs;
  for (const auto& g : gaps) vecs.push_back(g.UpperTriangle());
  Matrix corr(gaps.size(), gaps.size());
  for (std::size_t a = 0; a < gaps.size(); ++a) {
    corr(a, a) = 1.0;
    for (std::size_t b = a + 1; b < gaps.size(); ++b) {
      corr(a, b) = corr(b, a) = Spearman(vecs[a], vecs[b]);
    }
  }
  return corr;
}

Vector Softmax(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorKind::kShape, "softmax of an empty vector");
  const double top = *std::max_element(v.begin(), v.end());
  Vector out(v.size());
  double z = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) z += out[i] = std::exp(v[i] - top);
  for (double& x : out) x /= z;
  return out;
}

double JensenShannon(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::kShape, "JSD inputs differ in length");
  double js = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    const double tp = p[i] > 0.0 ? 0.5 * p[i] * std::log2(p[i] / m) : 0.0;
    const double tq = q[i] > 0.0 ? 0.5 * q[i] * std::log2(q[i] / m) : 0.0;
    js += tp + tq;  // commutative per entry, so JSD(p, q) == JSD(q, p) bit for bit
  }
  return std::clamp(js, 0.0, 1.0);
}

double AblationDistance(std::span<const double> v_target, std::span<const double> v_source,
                        AblationMetric metric, double epsilon) {
  if (v_target.size() != v_source.size()) {
    throw Error(ErrorKind::kShape, "ablation inputs differ in length");
  }
  if (metric == AblationMetric::kJsd) return JensenShannon(Softmax(v_target), Softmax(v_source));
  double dot = 0.0, nt = 0.0, ns = 0.0;
  for (std::size_t i = 0; i < v_target.size(); ++i) {
    dot += v_target[i] * v_source[i];
    nt += v_target[i] * v_target[i];
    ns += v_source[i] * v_source[i];
  }
  return 1.0 - dot / (std::max(std::sqrt(nt), epsilon) * std::max(std::sqrt(ns), epsilon));
}

}  // namespace condsel
