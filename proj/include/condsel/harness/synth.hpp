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
#ifndef CONDSEL_HARNESS_SYNTH_HPP_
#define CONDSEL_HARNESS_SYNTH_HPP_

// Desk-scale stand-in for a model zoo evaluated on a benchmark suite.
//
// Tasks are split into demand groups; every group's demand is a bump over the
// blocks centred at a different depth, and tasks in a group share it up to a
// `noise`-sized jitter. Each model has a positive block-affinity vector a_m, a
// sensitivity exponent b_m and a general quality q_m. For model m on task t:
//
//   conductance sample  g_i = a_m,i * demand_t,i ^ b_m * exp(image_noise * z)
//   accuracy            sigmoid(0.5 q_m + kAlign * (cos(a_m, demand_t) - mean_m) + noise * z)
//
// so tasks with close demands share model orderings and close conductance
// profiles. image_noise = 12 * noise.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "condsel/harness/bundle.hpp"
#include "condsel/rankagg.hpp"

namespace condsel {

struct SynthParams {
  std::uint64_t seed = 0;
  std::size_t n_models = 8;
  std::size_t n_tasks = 6;
  std::size_t blocks = 6;
  double noise = 0.05;
  std::size_t samples_per_task = 100;
};

struct SyntheticWorld {
  SynthParams params;
  BundleSet bundles;
  AccuracyTable table;
  std::size_t group_count = 0;
  std::vector<std::size_t> task_group;  // task index -> demand group
  std::vector<Vector> demands;          // per task

  bool noise_free() const noexcept { return params.noise == 0.0; }

  /// Group whose demand centre is farthest from `group`'s.
  std::size_t OppositeGroup(std::size_t group) const;
};

SyntheticWorld GenerateSyntheticWorld(const SynthParams& params);

}  // namespace condsel

#endif  // CONDSEL_HARNESS_SYNTH_HPP_
