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
#include "condsel/harness/pipeline.hpp"

#include <fmt/format.h>

#include "condsel/analysis.hpp"
#include "condsel/dcd.hpp"
#include "condsel/error.hpp"

namespace condsel {

std::string SourceDistanceName(SourceDistance d) {
  switch (d) {
    case SourceDistance::kDcd: return "dcd";
    case SourceDistance::kCosine: return "cosine";
    case SourceDistance::kJsd: return "jsd";
  }
  return "unknown";
}

SourceDistance ParseSourceDistance(const std::string& name) {
  if (name == "dcd") return SourceDistance::kDcd;
  if (name == "cosine") return SourceDistance::kCosine;
  if (name == "jsd") return SourceDistance::kJsd;
  throw Error(ErrorKind::kParameter, fmt::format("unknown source distance '{}'", name));
}

void RunConfig::Validate() const {
  if (!(eta > 0.0)) throw Error(ErrorKind::kParameter, "eta must be positive");
  if (!(gamma > 0.0)) throw Error(ErrorKind::kParameter, "gamma must be positive");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::kParameter, "epsilon must be positive");
  if (k < 1) throw Error(ErrorKind::kParameter, "k must be >= 1");
  if (n_src < 1 || n_tgt < 1) throw Error(ErrorKind::kParameter, "sample counts must be >= 1");
  if (runs < 1) throw Error(ErrorKind::kParameter, "runs must be >= 1");
}

RunRepresentations BuildRunRepresentations(const BundleSet& bundles,
                                           const std::vector<std::string>& models,
                                           const std::vector<std::string>& tasks,
                                           const RunConfig& cfg, std::size_t run) {
  RunRepresentations reps;
  reps.run = run;
  const std::uint64_t run_seed = cfg.seed + run;
  for (const auto& t : tasks) {
    const std::uint64_t tgt_key = SubsampleKey(run_seed, t, "target");
    const std::uint64_t src_key = SubsampleKey(run_seed, t, "source");
    for (const auto& m : models) {
      const ConductanceBundle& b = bundles.get(m, t);
      reps.as_target.emplace(std::make_pair(m, t),
                             MakeTaskRepresentation(Subsample(b, cfg.n_tgt, tgt_key).samples, m,
                                                    t, cfg.epsilon));
      reps.as_source.emplace(std::make_pair(m, t),
                             MakeTaskRepresentation(Subsample(b, cfg.n_src, src_key).samples, m,
                                                    t, cfg.epsilon));
    }
  }
  return reps;
}

namespace {

const TaskRepresentation& Lookup(
    const std::map<std::pair<std::string, std::string>, TaskRepresentation>& reps,
    const std::string& model, const std::string& task) {
  auto it = reps.find({model, task});
  if (it == reps.end()) {
    throw Error(ErrorKind::kCoverage, fmt::format("no representation for ({}, {})", model, task));
  }
  return it->second;
}

}  // namespace

TargetPrediction PredictForTarget(const RunRepresentations& reps, const AccuracyTable& table,
                                  const std::string& target, const RunConfig& cfg) {
  TargetPrediction out;
  out.target = target;
  for (const auto& t : table.tasks()) {
    if (t != target) out.sources.push_back(t);
  }
  if (out.sources.empty()) {
    throw Error(ErrorKind::kInsufficientData,
                fmt::format("target '{}' has no source tasks", target));
  }
  const RankTable ranks = RankTable::FromAccuracy(table, out.sources);

  std::map<std::string, double> predicted;
  for (const auto& m : table.models()) {
    const TaskRepresentation& tgt = Lookup(reps.as_target, m, target);
    const Vector alpha = Importance(tgt.u, cfg.eta).alpha;
    std::map<std::string, double> div;
    for (const auto& s : out.sources) {
      const TaskRepresentation& src = Lookup(reps.as_source, m, s);
      switch (cfg.distance) {
        case SourceDistance::kDcd:
          div[s] = Divergence(tgt, src, alpha, cfg.epsilon).value;
          break;
        case SourceDistance::kCosine:
          div[s] = AblationDistance(tgt.v, src.v, AblationMetric::kCosine, cfg.epsilon);
          break;
        case SourceDistance::kJsd:
          div[s] = AblationDistance(tgt.v, src.v, AblationMetric::kJsd, cfg.epsilon);
          break;
      }
    }
    SimilarityDistribution p = SimilarityWeights(div, cfg.gamma, target);
    predicted[m] = PredictedRank(p, ranks, m);
    out.divergence[m] = std::move(div);
    out.weights[m] = std::move(p);
  }
  out.ranking = Rank(predicted, target);
  return out;
}

std::vector<RunMetric> EvalReport::MetricsFor(const std::string& method) const {
  std::vector<RunMetric> out;
  for (const auto& r : rows) {
    if (r.method == method) out.push_back({r.run, r.metric});
  }
  return out;
}

EvalReport LeaveOneOut(const BundleSet& bundles, const AccuracyTable& table, const RunConfig& cfg) {
  cfg.Validate();
  bundles.CheckCoverage(table.models(), table.tasks());
  if (table.tasks().size() < 2) {
    throw Error(ErrorKind::kInsufficientData, "leave-one-out needs at least two tasks");
  }
  if (cfg.k > table.models().size()) {
    throw Error(ErrorKind::kParameter,
                fmt::format("k={} exceeds the {} candidate models", cfg.k, table.models().size()));
  }
  const bool with_inb = !cfg.imagenet_column.empty();
  if (with_inb && !table.has_task(cfg.imagenet_column)) {
    throw Error(ErrorKind::kLookup,
                fmt::format("ImageNet column '{}' not in accuracy table", cfg.imagenet_column));
  }

  EvalReport report;
  report.config = cfg;
  report.models = table.models();
  report.tasks = table.tasks();

  for (std::size_t run = 0; run < cfg.runs; ++run) {
    const RunRepresentations reps =
        BuildRunRepresentations(bundles, table.models(), table.tasks(), cfg, run);
    for (const auto& target : table.tasks()) {
      TargetPrediction pred = PredictForTarget(reps, table, target, cfg);
      PredictedRanking avg = BaselineAvgRank(table, pred.sources, target);
      // Scoring is the only read of the target column.
      const ModelRanks truth = GroundTruthRanks(table, target);

      report.rows.push_back({run, kMethodOurs, Evaluate(pred.ranking, truth, cfg.k, target),
                             std::move(pred.ranking)});
      report.rows.push_back(
          {run, kMethodAvgRank, Evaluate(avg, truth, cfg.k, target), std::move(avg)});
      // The reference column cannot rank itself without reading the target.
      if (with_inb && target != cfg.imagenet_column) {
        PredictedRanking inb = BaselineInb(table, cfg.imagenet_column, target);
        report.rows.push_back({run, kMethodInb, Evaluate(inb, truth, cfg.k, target), std::move(inb)});
      }
    }
  }
  for (const char* method : {kMethodOurs, kMethodAvgRank, kMethodInb}) {
    const auto metrics = report.MetricsFor(method);
    if (!metrics.empty()) report.summary[method] = Aggregate(metrics);
  }
  return report;
}

}  // namespace condsel
