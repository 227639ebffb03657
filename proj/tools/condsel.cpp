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
// condsel command-line interface.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "condsel/analysis.hpp"
#include "condsel/attribution.hpp"
#include "condsel/error.hpp"
#include "condsel/harness/bundle.hpp"
#include "condsel/harness/io.hpp"
#include "condsel/harness/pipeline.hpp"
#include "condsel/harness/report.hpp"
#include "condsel/harness/synth.hpp"
#include "condsel/harness/theory.hpp"
#include "condsel/rng.hpp"

namespace fs = std::filesystem;
using namespace condsel;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;

struct CommonFlags {
  RunConfig cfg;
  std::string distance = "dcd";
  std::string bundles;
  std::string accuracy;
  std::string out;
};

void AddRunFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--eta", f.cfg.eta, "importance temperature")->capture_default_str();
  cmd->add_option("--gamma", f.cfg.gamma, "similarity temperature")->capture_default_str();
  cmd->add_option("--epsilon", f.cfg.epsilon, "denominator floor")->capture_default_str();
  cmd->add_option("--k", f.cfg.k, "top-k cutoff for metrics")->capture_default_str();
  cmd->add_option("--n-src", f.cfg.n_src, "rows sampled per source task")->capture_default_str();
  cmd->add_option("--n-tgt", f.cfg.n_tgt, "rows sampled for the target task")->capture_default_str();
  cmd->add_option("--seed", f.cfg.seed, "base seed; run r uses seed + r")->capture_default_str();
  cmd->add_option("--runs", f.cfg.runs, "repetitions")->capture_default_str();
  cmd->add_option("--imagenet", f.cfg.imagenet_column, "accuracy column for the INB baseline");
  cmd->add_option("--distance", f.distance, "dcd | cosine | jsd")->capture_default_str();
}

void AddDataFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--bundles", f.bundles, "directory of conductance bundles")->required();
  cmd->add_option("--accuracy", f.accuracy, "accuracy CSV")->required();
  cmd->add_option("--out", f.out, "output directory")->required();
}

int RunSelect(CommonFlags& f) {
  f.cfg.distance = ParseSourceDistance(f.distance);
  const BundleSet bundles = BundleSet::LoadDirectory(f.bundles);
  const AccuracyTable table = LoadAccuracyTable(f.accuracy);
  const EvalReport report = LeaveOneOut(bundles, table, f.cfg);
  WriteReport(report, f.out);
  std::cout << FormatReportText(report);
  return 0;
}

struct SweepFlags {
  std::vector<double> etas;
  std::vector<double> gammas;
  std::vector<std::size_t> n_srcs;
};

int RunSweep(CommonFlags& f, const SweepFlags& s) {
  f.cfg.distance = ParseSourceDistance(f.distance);
  const BundleSet bundles = BundleSet::LoadDirectory(f.bundles);
  const AccuracyTable table = LoadAccuracyTable(f.accuracy);
  fs::create_directories(f.out);
  if (!s.n_srcs.empty()) {
    const auto cells = SweepSourceSamples(bundles, table, f.cfg, s.n_srcs);
    WriteFile(fs::path(f.out) / "sweep_nsrc.csv", FormatSweepCsv(cells));
    std::cout << FormatSweepCsv(cells);
  }
  if (!s.etas.empty() || !s.gammas.empty() || s.n_srcs.empty()) {
    const std::vector<double> etas = s.etas.empty() ? std::vector<double>{1.5, 2.0, 2.5, 3.0, 3.5} : s.etas;
    const std::vector<double> gammas =
        s.gammas.empty() ? std::vector<double>{3.0, 3.5, 4.0, 4.5, 5.0} : s.gammas;
    const auto cells = SweepTemperatures(bundles, table, f.cfg, etas, gammas);
    WriteFile(fs::path(f.out) / "sweep_temperature.csv", FormatSweepCsv(cells));
    std::cout << FormatSweepCsv(cells);
  }
  return 0;
}

int RunAnalyze(CommonFlags& f, const std::string& semantic) {
  const BundleSet bundles = BundleSet::LoadDirectory(f.bundles);
  const AccuracyTable table = LoadAccuracyTable(f.accuracy);
  bundles.CheckCoverage(table.models(), table.tasks());
  const fs::path out(f.out);
  fs::create_directories(out);
  std::optional<GapMatrix> sem;
  if (!semantic.empty()) sem = LoadGapMatrix(semantic, GapKind::kSemantic, "semantic");

  std::vector<GapMatrix> cond_gaps;
  std::string summary = sem ? "model,rho_conductance,rho_semantic\n" : "model,rho_conductance\n";
  for (const auto& m : table.models()) {
    std::vector<TaskRepresentation> reps;
    for (const auto& t : table.tasks()) {
      reps.push_back(MakeTaskRepresentation(bundles.get(m, t).samples, m, t, f.cfg.epsilon));
    }
    const GapMatrix perf = PerformanceGap(table, m);
    GapMatrix cond = ConductanceGap(reps, f.cfg.eta, f.cfg.epsilon);
    WriteFile(out / fmt::format("gap_performance__{}.csv", m), SerializeGapMatrixCsv(perf));
    WriteFile(out / fmt::format("gap_conductance__{}.csv", m), SerializeGapMatrixCsv(cond));
    const double rho = ProxyReliability(perf, cond);
    summary += fmt::format("{},{:.12f}", m, rho);
    if (sem) summary += fmt::format(",{:.12f}", ProxyReliability(perf, *sem));
    summary += "\n";
    cond_gaps.push_back(std::move(cond));
  }
  WriteFile(out / "proxy_reliability.csv", summary);
  WriteFile(out / "model_correlation.csv",
            SerializeLabeledMatrixCsv(table.models(), ModelCorrelationMatrix(cond_gaps), "model"));
  std::cout << summary;
  return 0;
}

struct SynthFlags {
  SynthParams params;
  std::string out;
};

int RunSynth(const SynthFlags& s) {
  const SyntheticWorld w = GenerateSyntheticWorld(s.params);
  const fs::path out(s.out);
  w.bundles.SaveDirectory(out / "bundles");
  WriteFile(out / "accuracy.csv", SerializeAccuracyCsv(w.table));
  std::cout << fmt::format("wrote {} bundles and accuracy.csv ({} models x {} tasks, noise {}{}) to {}\n",
                           w.bundles.size(), w.table.models().size(), w.table.tasks().size(),
                           s.params.noise, w.noise_free() ? ", noise-free" : "", out.string());
  return 0;
}

struct ExtractFlags {
  std::uint64_t seed = 0;
  std::size_t models = 3;
  std::size_t tasks = 4;
  std::size_t samples = 25;
  int steps = 50;
  std::string quadrature = "midpoint";
  std::string net;
  std::string export_net;
  std::string out;
};

// Built-in zoo: 4-block tanh nets; each task is a Gaussian input cloud with
// its own centre and spread.
int RunExtractToy(const ExtractFlags& e) {
  constexpr std::size_t kInput = 8;
  const std::vector<std::size_t> widths{kInput, 16, 16, 12, 8};
  const std::vector<BlockKind> kinds(4, BlockKind::kAffineTanh);

  if (!e.export_net.empty()) {
    SaveNetwork(ToyNetwork::Random(e.seed, {4, 6, 3}, {BlockKind::kAffineTanh, BlockKind::kAffineTanh}),
                e.export_net);
    std::cout << "wrote reference network to " << e.export_net << "\n";
    if (e.out.empty()) return 0;
  }
  if (e.out.empty()) throw Error(ErrorKind::kParameter, "--out is required unless only exporting");

  std::vector<std::pair<std::string, ToyNetwork>> zoo;
  if (!e.net.empty()) {
    zoo.emplace_back(fs::path(e.net).stem().string(), LoadNetwork(e.net));
  } else {
    for (std::size_t m = 0; m < e.models; ++m) {
      zoo.emplace_back(fmt::format("toy{:02}", m), ToyNetwork::Random(CombineKey(e.seed, m), widths, kinds));
    }
  }
  AttributionConfig cfg;
  cfg.steps = e.steps;
  cfg.quadrature = ParseQuadrature(e.quadrature);

  BundleSet set;
  for (std::size_t t = 0; t < e.tasks; ++t) {
    const std::string task = fmt::format("cloud{:02}", t);
    CounterRng trng(CombineKey(e.seed, HashString(task)));
    for (const auto& [model, net] : zoo) {
      Vector centre(net.input_dim());
      for (double& c : centre) c = trng.Uniform(-1.0, 1.0);
      const double spread = trng.Uniform(0.1, 0.6);
      ConductanceBundle b;
      b.model_id = model;
      b.task_id = task;
      b.block_count = net.block_count();
      b.extraction.steps = e.steps;
      b.extraction.extractor_version = "condsel-extract-toy/1";
      b.extraction.extra["quadrature"] = QuadratureName(cfg.quadrature);
      CounterRng xrng(CombineKey(CombineKey(e.seed, HashString(model)), HashString(task)));
      for (std::size_t n = 0; n < e.samples; ++n) {
        Vector x(net.input_dim());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = centre[i] + spread * xrng.Normal();
        Diagnostics diag;
        b.samples.push_back(ConductanceVector(net, x, cfg, &diag));
        for (const auto& msg : diag.messages()) std::cerr << model << "/" << task << ": " << msg << "\n";
      }
      set.Add(std::move(b));
    }
  }
  set.SaveDirectory(e.out);
  std::cout << fmt::format("wrote {} bundles ({} models x {} tasks, {} samples, n={}) to {}\n", set.size(),
                           zoo.size(), e.tasks, e.samples, e.steps, e.out);
  return 0;
}

struct TheoryFlags {
  std::uint64_t seed = 0;
  std::size_t instances = 1000;
  std::size_t simplex_points = 200;
  std::string out;
};

int RunVerifyTheory(const TheoryFlags& t) {
  const TheoryReport r = RunTheorySuite(t.seed, t.instances, t.simplex_points);
  const std::string text = FormatTheoryReport(r);
  std::cout << text;
  if (!t.out.empty()) {
    fs::create_directories(t.out);
    WriteFile(fs::path(t.out) / "theory.txt", text);
  }
  return r.ok() ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condsel: conductance-based transferability estimation"};
  app.require_subcommand(1);

  CommonFlags select_flags;
  CLI::App* select = app.add_subcommand("select", "leave-one-out model selection");
  AddDataFlags(select, select_flags);
  AddRunFlags(select, select_flags);

  CommonFlags sweep_flags;
  SweepFlags sweep_grid;
  CLI::App* sweep = app.add_subcommand("sweep", "grid over (eta, gamma) or over --n-src values");
  AddDataFlags(sweep, sweep_flags);
  AddRunFlags(sweep, sweep_flags);
  sweep->add_option("--etas", sweep_grid.etas, "eta grid (default 1.5..3.5)")->delimiter(',');
  sweep->add_option("--gammas", sweep_grid.gammas, "gamma grid (default 3.0..5.0)")->delimiter(',');
  sweep->add_option("--n-srcs", sweep_grid.n_srcs, "source sample counts to sweep")->delimiter(',');

  CommonFlags analyze_flags;
  analyze_flags.cfg.eta = kAnalysisEta;
  std::string semantic;
  CLI::App* analyze = app.add_subcommand("analyze", "gap matrices and proxy correlations");
  AddDataFlags(analyze, analyze_flags);
  analyze->add_option("--eta", analyze_flags.cfg.eta, "importance temperature")->capture_default_str();
  analyze->add_option("--epsilon", analyze_flags.cfg.epsilon, "denominator floor")->capture_default_str();
  analyze->add_option("--semantic", semantic, "precomputed semantic gap matrix CSV");

  SynthFlags synth_flags;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic model zoo");
  synth->add_option("--seed", synth_flags.params.seed)->capture_default_str();
  synth->add_option("--n-models", synth_flags.params.n_models)->capture_default_str();
  synth->add_option("--n-tasks", synth_flags.params.n_tasks)->capture_default_str();
  synth->add_option("--blocks", synth_flags.params.blocks)->capture_default_str();
  synth->add_option("--noise", synth_flags.params.noise)->capture_default_str();
  synth->add_option("--samples", synth_flags.params.samples_per_task)->capture_default_str();
  synth->add_option("--out", synth_flags.out, "output directory")->required();

  ExtractFlags extract_flags;
  CLI::App* extract = app.add_subcommand("extract-toy", "layer conductance bundles from toy networks");
  extract->add_option("--seed", extract_flags.seed)->capture_default_str();
  extract->add_option("--models", extract_flags.models, "built-in networks")->capture_default_str();
  extract->add_option("--tasks", extract_flags.tasks, "input distributions")->capture_default_str();
  extract->add_option("--samples", extract_flags.samples, "inputs per task")->capture_default_str();
  extract->add_option("--steps", extract_flags.steps, "path steps n")->capture_default_str();
  extract->add_option("--quadrature", extract_flags.quadrature, "midpoint | right")->capture_default_str();
  extract->add_option("--net", extract_flags.net, "network file to use instead of the built-ins");
  extract->add_option("--export-net", extract_flags.export_net, "write the reference network here");
  extract->add_option("--out", extract_flags.out, "bundle output directory");

  TheoryFlags theory_flags;
  CLI::App* theory = app.add_subcommand("verify-theory", "randomized divergence bound checks");
  theory->add_option("--seed", theory_flags.seed)->capture_default_str();
  theory->add_option("--instances", theory_flags.instances)->capture_default_str();
  theory->add_option("--simplex-points", theory_flags.simplex_points)->capture_default_str();
  theory->add_option("--out", theory_flags.out, "also write theory.txt here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (select->parsed()) return RunSelect(select_flags);
    if (sweep->parsed()) return RunSweep(sweep_flags, sweep_grid);
    if (analyze->parsed()) return RunAnalyze(analyze_flags, semantic);
    if (synth->parsed()) return RunSynth(synth_flags);
    if (extract->parsed()) return RunExtractToy(extract_flags);
    if (theory->parsed()) return RunVerifyTheory(theory_flags);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
