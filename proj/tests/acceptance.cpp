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
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <unistd.h>

#include "condsel/attribution.hpp"
#include "condsel/dcd.hpp"
#include "condsel/harness/io.hpp"
#include "condsel/harness/pipeline.hpp"
#include "condsel/harness/synth.hpp"
#include "condsel/harness/theory.hpp"
#include "condsel/metrics.hpp"
#include "condsel/rankagg.hpp"
#include "condsel/rng.hpp"
#include "condsel/taskrep.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace condsel;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int g_failures = 0;

void Report(int id, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++g_failures;
  std::cout << fmt::format("{} [{}] {}: {}", ok ? "PASS" : "FAIL", id, what, detail) << std::endl;
}

Vector RandomUnitVector(CounterRng& rng, std::size_t d) {
  Vector v(d);
  for (double& x : v) x = rng.Uniform();
  if (rng.Below(4) == 0) v[rng.Below(d)] = v[rng.Below(d)];
  return Normalize(v);
}

void Completeness() {
  const auto t0 = Clock::now();
  double max_err[3] = {0, 0, 0};
  std::size_t slow_instances = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    CounterRng rng(CombineKey(s, HashString("completeness")));
    const std::size_t blocks = 2 + rng.Below(3);
    std::vector<std::size_t> widths{4};
    std::vector<BlockKind> kinds;
    for (std::size_t b = 0; b < blocks; ++b) {
      widths.push_back(3 + rng.Below(6));
      kinds.push_back(BlockKind::kAffineTanh);
    }
    const ToyNetwork net = ToyNetwork::Random(s, widths, kinds, 1.5, 0.1);
    const Vector zero(4, 0.0);
    const double f0 = Objective(Forward(net, zero).embedding());
    for (int i = 0; i < 20; ++i) {
      Vector x(4);
      for (double& v : x) v = rng.Uniform(-2.0, 2.0);
      const double target = Objective(Forward(net, x).embedding()) - f0;
      double err[3];
      int j = 0;
      for (int n : {64, 128, 256}) {
        AttributionConfig cfg;
        cfg.steps = n;
        double worst = 0.0;
        for (const auto& b : LayerConductanceAll(net, x, cfg)) {
          double sum = 0.0;
          for (double c : b.per_neuron) sum += c;
          worst = std::max(worst, std::fabs(sum - target));
        }
        err[j] = worst;
        max_err[j] = std::max(max_err[j], worst);
        ++j;
      }
      if (err[0] / err[1] < 2.0 || err[1] / err[2] < 2.0) ++slow_instances;
    }
  }
  const double secs = Seconds(t0);
  // The suite error is the max over all 400 (net, input) pairs.
  const double r1 = max_err[0] / max_err[1], r2 = max_err[1] / max_err[2];
  Report(1, max_err[2] <= 1e-3 && r1 >= 2.0 && r2 >= 2.0 && secs < 5.0, "conductance completeness",
         fmt::format("max err n=64/128/256 {:.2e}/{:.2e}/{:.2e}, doubling ratios {:.2f}/{:.2f} "
                     "({} of 400 single instances pre-asymptotic), {:.2f} s",
                     max_err[0], max_err[1], max_err[2], r1, r2, slow_instances, secs));
}

void AffineExactness() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ToyNetwork net =
        ToyNetwork::Random(s, {5, 7, 4, 3}, std::vector<BlockKind>(3, BlockKind::kAffine), 1.0, 0.0);
    CounterRng rng(CombineKey(s, HashString("affine")));
    Vector x(5);
    for (double& v : x) v = rng.Uniform(-2.0, 2.0);
    AttributionConfig one, many;
    one.steps = 1;
    many.steps = 1000;
    const auto a = LayerConductanceAll(net, x, one);
    const auto b = LayerConductanceAll(net, x, many);
    for (std::size_t blk = 0; blk < a.size(); ++blk) {
      for (std::size_t i = 0; i < a[blk].per_neuron.size(); ++i) {
        worst = std::max(worst, std::fabs(a[blk].per_neuron[i] - b[blk].per_neuron[i]));
      }
    }
  }
  Report(2, worst <= 1e-12, "affine step independence",
         fmt::format("max |n=1 - n=1000| = {:.2e} over 20 bias-free affine nets", worst));
}

void SoftmaxOptimality() {
  CounterRng rng(HashString("optimality"));
  std::size_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int c = 0; c < 100; ++c) {
    const std::size_t d = 2 + rng.Below(11);
    const Vector u = RandomUnitVector(rng, d);
    const double eta = rng.Uniform(0.5, 20.0);
    const double best = AlignmentObjective(Importance(u, eta).alpha, u, eta);
    for (int p = 0; p < 10000; ++p) {
      const double margin = best - AlignmentObjective(RandomSimplexPoint(rng, d), u, eta);
      worst = std::min(worst, margin);
      if (margin < -1e-12) ++violations;
    }
  }
  Report(3, violations == 0, "softmax optimality",
         fmt::format("100 (u, eta) x 10000 points, {} violations, worst margin {:.3e}", violations,
                     worst));
}

void TailMassBound() {
  CounterRng rng(HashString("tail-lemma"));
  std::size_t checked = 0, violations = 0, drawn = 0;
  while (checked < 1000) {
    ++drawn;
    const std::size_t d = 2 + rng.Below(11);
    const Vector u = RandomUnitVector(rng, d);
    const double eta = rng.Uniform(0.5, 20.0);
    const std::size_t k = 1 + rng.Below(d - 1);
    const TailBoundReport r = VerifyTailBound(u, eta, k);
    if (!r.lemma_checked) continue;
    ++checked;
    if (!r.lemma_holds) ++violations;
  }
  Report(4, violations == 0, "tail-mass bound",
         fmt::format("{} instances with positive gap ({} drawn), {} violations", checked, drawn,
                     violations));
}

void Decomposition() {
  CounterRng rng(HashString("decomposition"));
  std::size_t bad_eq = 0, bad_r = 0, bad_gap = 0;
  double worst_err = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t d = 2 + rng.Below(11);
    const Vector u = RandomUnitVector(rng, d);
    const double eta = rng.Uniform(0.5, 20.0);
    const std::size_t k = 1 + rng.Below(d - 1);
    Vector delta(d);
    for (double& x : delta) x = rng.Below(5) == 0 ? 0.0 : rng.Uniform(0.0, 3.0);
    const TailBoundReport r = VerifyTailBound(u, eta, k, delta);
    worst_err = std::max(worst_err, r.decomposition_error);
    bad_eq += !r.decomposition_holds;
    bad_r += !r.residual_holds;
    bad_gap += !r.gap_bound_holds;
  }
  Report(5, bad_eq + bad_r + bad_gap == 0, "set-restricted decomposition",
         fmt::format("1000 instances, max |D - (1-t)d_k - r| {:.2e}, violations eq/r/gap {}/{}/{}",
                     worst_err, bad_eq, bad_r, bad_gap));
}

void Asymmetry() {
  const AsymmetryWitness w = MakeAsymmetryWitness(10.0);
  Report(6, w.forward < 0.05 && w.reverse > 0.5, "asymmetry witness",
         fmt::format("eta=10: D(target->source)={:.6f}, D(source->target)={:.6f}", w.forward,
                     w.reverse));
}

void MetricOracles() {
  CounterRng rng(HashString("metric-oracles"));
  std::size_t mismatches = 0, small_nonzero = 0, small_cases = 0;
  double worst_ndcg = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 5 + rng.Below(5);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < m; ++i) ids.push_back(fmt::format("m{}", i));
    Vector acc(m);
    for (double& a : acc) a = static_cast<double>(rng.Below(6));
    std::map<std::string, double> score;
    for (const auto& id : ids) score[id] = rng.Uniform();
    const PredictedRanking pred = Rank(score);
    const Vector tr = TieAveragedRanks(acc, true);
    ModelRanks truth;
    for (std::size_t i = 0; i < m; ++i) truth[ids[i]] = tr[i];
    const std::size_t k = 1 + rng.Below(5);

    const oracle::TopkCase c{pred.order, truth, k};
    const MetricResult r = Evaluate(pred, truth, k, "t");
    const double dn = std::fabs(r.ndcg - oracle::Ndcg(c));
    worst_ndcg = std::max(worst_ndcg, dn);
    if (TopkIntersection(pred, truth, k) != oracle::Intersection(c) || dn > 1e-12 ||
        r.tau != oracle::TauAtK(c)) {
      ++mismatches;
    }
    if (r.intersection_size < 2) {
      ++small_cases;
      if (r.ndcg != 0.0 || r.tau != 0.0) ++small_nonzero;
    }
  }
  Report(7, mismatches == 0 && small_nonzero == 0, "metric oracles",
         fmt::format("1000 instances, {} mismatches, max NDCG diff {:.2e}, {} cases with |I|<2 "
                     "({} nonzero)",
                     mismatches, worst_ndcg, small_cases, small_nonzero));
}

void BaselineReduction() {
  const SyntheticWorld w = GenerateSyntheticWorld(SynthParams{});
  RunConfig cfg;
  cfg.gamma = 1e-9;
  const RunRepresentations reps =
      BuildRunRepresentations(w.bundles, w.table.models(), w.table.tasks(), cfg, 0);
  std::size_t matched = 0;
  for (const auto& target : w.table.tasks()) {
    const TargetPrediction p = PredictForTarget(reps, w.table, target, cfg);
    if (p.ranking.order == BaselineAvgRank(w.table, p.sources, target).order) ++matched;
  }
  Report(8, matched == w.table.tasks().size(), "baseline reduction at gamma=1e-9",
         fmt::format("{}/{} targets match the AvgRank permutation", matched,
                     w.table.tasks().size()));
}

void SignalAndSaturation() {
  constexpr int kWorlds = 10;
  const std::vector<std::size_t> n_srcs{1, 25, 50, 100};
  const auto t0 = Clock::now();
  double ours = 0.0, avg = 0.0;
  std::map<std::size_t, double> sat;
  bool any_noise_free = false;
  double main_secs = 0.0;
  std::vector<SyntheticWorld> worlds;
  for (int s = 0; s < kWorlds; ++s) {
    SynthParams p;
    p.seed = static_cast<std::uint64_t>(s);
    worlds.push_back(GenerateSyntheticWorld(p));
    any_noise_free = any_noise_free || worlds.back().noise_free();
    RunConfig cfg;
    cfg.seed = p.seed;
    const EvalReport r = LeaveOneOut(worlds.back().bundles, worlds.back().table, cfg);
    ours += r.summary.at(kMethodOurs).ndcg.mean / kWorlds;
    avg += r.summary.at(kMethodAvgRank).ndcg.mean / kWorlds;
  }
  main_secs = Seconds(t0);
  Report(9, ours - avg >= 0.03 && main_secs < 30.0, "signal recovery on the synthetic world",
         fmt::format("{} seeds: NDCG@5 dcd {:.4f} vs avgrank {:.4f} (diff {:+.4f}), {:.2f} s", kWorlds,
                     ours, avg, ours - avg, main_secs));

  for (int s = 0; s < kWorlds; ++s) {
    for (std::size_t n : n_srcs) {
      RunConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(s);
      cfg.n_src = n;
      sat[n] += LeaveOneOut(worlds[s].bundles, worlds[s].table, cfg).summary.at(kMethodOurs).ndcg.mean /
                kWorlds;
    }
  }
  const double hi = std::max({sat[25], sat[50], sat[100]});
  const double lo = std::min({sat[25], sat[50], sat[100]});
  const double step = std::fabs(sat[25] - sat[1]);
  const bool ok = hi - lo < 0.03 && (step > 0.03 || any_noise_free);
  Report(10, ok, "source-sample saturation",
         fmt::format("NDCG@5 at n_src=1/25/50/100: {:.4f}/{:.4f}/{:.4f}/{:.4f}; spread {:.4f}, "
                     "1 vs 25 {:.4f}",
                     sat[1], sat[25], sat[50], sat[100], hi - lo, step));
}

int Run(const std::string& cmd) {
  return std::system((cmd + " > /dev/null 2>&1").c_str());
}

void Determinism() {
  const fs::path root = fs::temp_directory_path() / fmt::format("condsel_accept_{}", ::getpid());
  fs::remove_all(root);
  const std::string cli = CONDSEL_CLI_PATH;
  const std::string world = (root / "world").string();
  bool ok = Run(fmt::format("'{}' synth --seed 3 --out '{}'", cli, world)) == 0;
  std::string detail;
  std::size_t compared = 0;
  for (const char* out : {"a", "b"}) {
    ok = ok && Run(fmt::format("'{}' select --bundles '{}/bundles' --accuracy '{}/accuracy.csv' "
                               "--seed 11 --runs 3 --out '{}'",
                               cli, world, world, (root / out).string())) == 0;
  }
  if (ok) {
    for (const auto& entry : fs::directory_iterator(root / "a")) {
      const fs::path other = root / "b" / entry.path().filename();
      if (!fs::exists(other) || ReadFile(entry.path()) != ReadFile(other)) {
        ok = false;
        detail += " differs:" + entry.path().filename().string();
      }
      ++compared;
    }
    ok = ok && compared > 0;
  } else {
    detail = " CLI invocation failed";
  }
  fs::remove_all(root);
  Report(11, ok, "select determinism",
         fmt::format("two select runs, {} report files compared byte-for-byte{}", compared, detail));
}

}  // namespace

int main() {
  try {
    Completeness();
    AffineExactness();
    SoftmaxOptimality();
    TailMassBound();
    Decomposition();
    Asymmetry();
    MetricOracles();
    BaselineReduction();
    SignalAndSaturation();
    Determinism();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << fmt::format("{} criteria failed", g_failures) << std::endl;
  return g_failures == 0 ? 0 : 1;
}
