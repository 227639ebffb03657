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
#include "condsel/harness/theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

namespace condsel {

AsymmetryWitness MakeAsymmetryWitness(double eta) {
  AsymmetryWitness w;
  w.eta = eta;
  w.target = MakeTaskRepresentation({{1.0, 0.02, 0.02, 0.02}}, "witness", "target");
  w.source = MakeTaskRepresentation({{1.0, 1.0, 1.0, 0.02}}, "witness", "source");
  w.forward = Divergence(w.target, w.source, eta).value;
  w.reverse = Divergence(w.source, w.target, eta).value;
  return w;
}

Vector RandomSimplexPoint(CounterRng& rng, std::size_t d) {
  Vector p(d, 0.0);
  const bool sparse = rng.Below(4) == 0;
  double z = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (sparse && rng.Below(2) == 0) continue;
    double e = rng.Uniform();
    while (e <= 0.0) e = rng.Uniform();
    p[i] = -std::log(e);
    z += p[i];
  }
  if (z == 0.0) {
    p[rng.Below(d)] = 1.0;
    return p;
  }
  for (double& x : p) x /= z;
  return p;
}

bool TheoryReport::ok() const {
  return lemma_violations == 0 && decomposition_violations == 0 && residual_violations == 0 &&
         gap_violations == 0 && coverage_violations == 0 && optimality_violations == 0 &&
         witness.forward < witness.reverse;
}

TheoryReport RunTheorySuite(std::uint64_t seed, std::size_t instances,
                            std::size_t simplex_points) {
  TheoryReport rep;
  rep.instances = instances;
  rep.worst_optimality_margin = std::numeric_limits<double>::infinity();
  CounterRng rng(CombineKey(seed, HashString("theory")));

  for (std::size_t n = 0; n < instances; ++n) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.Below(11));
    Vector v(d);
    for (double& x : v) x = rng.Uniform();
    // Occasional exact ties exercise the >= threshold.
    if (rng.Below(4) == 0) v[rng.Below(d)] = v[rng.Below(d)];
    const Vector u = Normalize(v);
    const double eta = rng.Uniform(0.5, 20.0);
    const std::size_t k = 1 + static_cast<std::size_t>(rng.Below(d - 1));
    Vector delta(d);
    for (double& x : delta) x = rng.Below(5) == 0 ? 0.0 : rng.Uniform(0.0, 3.0);

    const TailBoundReport tb = VerifyTailBound(u, eta, k, delta);
    if (tb.lemma_checked) {
      ++rep.lemma_checked;
      if (!tb.lemma_holds) ++rep.lemma_violations;
    }
    if (!tb.decomposition_holds) ++rep.decomposition_violations;
    if (!tb.residual_holds) ++rep.residual_violations;
    if (!tb.gap_bound_holds) ++rep.gap_violations;

    // Coverage limit: zero deviation on the salient set.
    if (tb.gap > 0.0) {
      const SalientSet s = MakeSalientSet(u, k);
      Vector covered = delta;
      for (std::size_t i : s.indices) covered[i] = 0.0;
      const Vector alpha = Importance(u, eta).alpha;
      double dv = 0.0;
      for (std::size_t i = 0; i < d; ++i) dv += alpha[i] * covered[i];
      const double b = *std::max_element(covered.begin(), covered.end());
      ++rep.coverage_checked;
      if (dv > b * tb.bound + kBoundTolerance) ++rep.coverage_violations;
    }

    const Vector alpha = Importance(u, eta).alpha;
    const double best = AlignmentObjective(alpha, u, eta);
    for (std::size_t p = 0; p < simplex_points; ++p) {
      const Vector point = RandomSimplexPoint(rng, d);
      const double margin = best - AlignmentObjective(point, u, eta);
      ++rep.optimality_checked;
      rep.worst_optimality_margin = std::min(rep.worst_optimality_margin, margin);
      if (margin < -1e-12) ++rep.optimality_violations;
    }
  }
  rep.witness = MakeAsymmetryWitness();
  return rep;
}

std::string FormatTheoryReport(const TheoryReport& r) {
  auto line = [](const char* name, std::size_t checked, std::size_t bad) {
    return fmt::format("{:<34} {:>7} checked {:>5} violations  {}\n", name, checked, bad,
                       bad == 0 ? "PASS" : "FAIL");
  };
  std::string out = fmt::format("theory suite: {} random instances\n", r.instances);
  out += line("tail-mass bound", r.lemma_checked, r.lemma_violations);
  out += line("decomposition D = (1-t)d_k + r", r.instances, r.decomposition_violations);
  out += line("residual 0 <= r <= B t", r.instances, r.residual_violations);
  out += line("|D - d_k| <= 2 B t", r.instances, r.gap_violations);
  out += line("coverage limit", r.coverage_checked, r.coverage_violations);
  out += line("softmax optimality", r.optimality_checked, r.optimality_violations);
  out += fmt::format("worst optimality margin            {:.3e}\n", r.worst_optimality_margin);
  out += fmt::format("asymmetry witness (eta={}): D(t->s)={:.6f} D(s->t)={:.6f}  {}\n", r.witness.eta,
                     r.witness.forward, r.witness.reverse,
                     r.witness.forward < r.witness.reverse ? "PASS" : "FAIL");
  return out;
}

}  // namespace condsel
