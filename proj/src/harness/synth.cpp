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
#include "condsel/harness/synth.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "condsel/error.hpp"
#include "condsel/rng.hpp"

namespace condsel {

namespace {

constexpr double kAffinitySpread = 0.4;
constexpr double kQualityWeight = 0.5;
constexpr double kAlign = 20.0;
constexpr double kImageNoisePerNoise = 12.0;
constexpr double kDemandFloor = 0.25;

double GroupCentre(std::size_t group, std::size_t groups, std::size_t blocks) {
  return (static_cast<double>(group) + 0.5) * static_cast<double>(blocks) /
             static_cast<double>(groups) - 0.5;
}

double Cosine(const Vector& a, const Vector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

AccuracyTable Placeholder() { return AccuracyTable({"_"}, {"_"}, {{0.0}}); }

}  // namespace

std::size_t SyntheticWorld::OppositeGroup(std::size_t group) const {
  std::size_t best = group;
  double far = -1.0;
  const double c = GroupCentre(group, group_count, params.blocks);
  for (std::size_t g = 0; g < group_count; ++g) {
    const double dist = std::fabs(GroupCentre(g, group_count, params.blocks) - c);
    if (dist > far) {
      far = dist;
      best = g;
    }
  }
  return best;
}

SyntheticWorld GenerateSyntheticWorld(const SynthParams& p) {
  if (p.n_models < 2 || p.n_tasks < 2 || p.blocks < 2) {
    throw Error(ErrorKind::kParameter, "synthetic world needs >= 2 models, tasks and blocks");
  }
  if (p.samples_per_task < 1) throw Error(ErrorKind::kParameter, "samples_per_task must be >= 1");
  if (!(p.noise >= 0.0)) throw Error(ErrorKind::kParameter, "noise must be >= 0");

  SyntheticWorld w{p, {}, Placeholder(), 0, {}, {}};
  const std::size_t d = p.blocks;
  w.group_count = std::max<std::size_t>(1, (p.n_tasks + 1) / 2);
  const double width = std::max(0.75, static_cast<double>(d) / (2.0 * static_cast<double>(w.group_count)));

  std::vector<std::string> task_ids, model_ids;
  for (std::size_t t = 0; t < p.n_tasks; ++t) task_ids.push_back(fmt::format("t{:02}", t));
  for (std::size_t m = 0; m < p.n_models; ++m) model_ids.push_back(fmt::format("m{:02}", m));

  CounterRng task_rng(CombineKey(p.seed, HashString("synth/tasks")));
  for (std::size_t t = 0; t < p.n_tasks; ++t) {
    const std::size_t g = t % w.group_count;
    const double c = GroupCentre(g, w.group_count, d);
    Vector q(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double x = static_cast<double>(i) - c;
      q[i] = (kDemandFloor + std::exp(-x * x / (2.0 * width * width))) *
             std::exp(p.noise * task_rng.Normal());
    }
    w.task_group.push_back(g);
    w.demands.push_back(std::move(q));
  }

  struct Model {
    Vector affinity;
    double exponent;
    double quality;
  };
  std::vector<Model> models;
  CounterRng model_rng(CombineKey(p.seed, HashString("synth/models")));
  for (std::size_t m = 0; m < p.n_models; ++m) {
    Model mod;
    for (std::size_t i = 0; i < d; ++i) mod.affinity.push_back(std::exp(kAffinitySpread * model_rng.Normal()));
    mod.exponent = model_rng.Uniform(0.8, 1.2);
    mod.quality = model_rng.Normal();
    models.push_back(std::move(mod));
  }

  const double image_noise = kImageNoisePerNoise * p.noise;
  for (std::size_t m = 0; m < p.n_models; ++m) {
    for (std::size_t t = 0; t < p.n_tasks; ++t) {
      ConductanceBundle b;
      b.model_id = model_ids[m];
      b.task_id = task_ids[t];
      b.block_count = d;
      b.extraction.steps = 0;
      b.extraction.baseline = "zero";
      b.extraction.extractor_version = "condsel-synth/1";
      CounterRng rng(CombineKey(CombineKey(p.seed, HashString("synth/samples")),
                                CombineKey(HashString(b.model_id), HashString(b.task_id))));
      for (std::size_t j = 0; j < p.samples_per_task; ++j) {
        Vector row(d);
        for (std::size_t i = 0; i < d; ++i) {
          row[i] = models[m].affinity[i] * std::pow(w.demands[t][i], models[m].exponent) *
                   std::exp(image_noise * rng.Normal());
        }
        b.samples.push_back(std::move(row));
      }
      w.bundles.Add(std::move(b));
    }
  }

  // Alignment is centred per model so that kAlign drives task-specific order
  // and `quality` drives the shared component.
  std::vector<Vector> align(p.n_models, Vector(p.n_tasks));
  for (std::size_t m = 0; m < p.n_models; ++m) {
    double mean = 0.0;
    for (std::size_t t = 0; t < p.n_tasks; ++t) mean += align[m][t] = Cosine(models[m].affinity, w.demands[t]);
    mean /= static_cast<double>(p.n_tasks);
    for (double& a : align[m]) a -= mean;
  }
  CounterRng acc_rng(CombineKey(p.seed, HashString("synth/accuracy")));
  std::vector<Vector> acc(p.n_models, Vector(p.n_tasks));
  for (std::size_t m = 0; m < p.n_models; ++m) {
    for (std::size_t t = 0; t < p.n_tasks; ++t) {
      const double logit = kQualityWeight * models[m].quality + kAlign * align[m][t] +
                           p.noise * acc_rng.Normal();
      acc[m][t] = 1.0 / (1.0 + std::exp(-logit));
    }
  }
  w.table = AccuracyTable(model_ids, task_ids, std::move(acc));
  return w;
}

}  // namespace condsel
