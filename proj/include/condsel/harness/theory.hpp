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
#ifndef CONDSEL_HARNESS_THEORY_HPP_
#define CONDSEL_HARNESS_THEORY_HPP_

// Randomized checks of the divergence's structural guarantees: softmax
// optimality of the importance weights, the tail-mass bound, the set-restricted
// decomposition and its bounds, the coverage limit, and an explicit asymmetry
// witness.

#include <cstddef>
#include <cstdint>
#include <string>

#include "condsel/dcd.hpp"
#include "condsel/rng.hpp"
#include "condsel/taskrep.hpp"

namespace condsel {

/// Target salient on block 0; source tied on blocks 0..2 and matching the
/// target on block 0 only. Forward D is small, reverse D is large.
struct AsymmetryWitness {
  TaskRepresentation target;
  TaskRepresentation source;
  double eta = 10.0;
  double forward = 0.0;  // D(target -> source)
  double reverse = 0.0;  // D(source -> target)
};

AsymmetryWitness MakeAsymmetryWitness(double eta = 10.0);

/// Dirichlet(1) point on the simplex, or (with probability 1/4) a point
/// supported on a random subset of vertices.
Vector RandomSimplexPoint(CounterRng& rng, std::size_t d);

struct TheoryReport {
  std::size_t instances = 0;
  std::size_t lemma_checked = 0;
  std::size_t lemma_violations = 0;
  std::size_t decomposition_violations = 0;
  std::size_t residual_violations = 0;
  std::size_t gap_violations = 0;
  std::size_t coverage_checked = 0;
  std::size_t coverage_violations = 0;
  std::size_t optimality_checked = 0;
  std::size_t optimality_violations = 0;
  double worst_optimality_margin = 0.0;  // min over checks of objective(alpha) - objective(point)
  AsymmetryWitness witness;

  bool ok() const;
};

/// `instances` random (u, eta, k, delta) cases, each with `simplex_points`
/// optimality probes.
TheoryReport RunTheorySuite(std::uint64_t seed, std::size_t instances,
                            std::size_t simplex_points = 200);

std::string FormatTheoryReport(const TheoryReport& report);

}  // namespace condsel

#endif  // CONDSEL_HARNESS_THEORY_HPP_
