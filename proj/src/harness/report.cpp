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
#include "condsel/harness/report.hpp"

#include <fmt/format.h>

#include "condsel/harness/io.hpp"

namespace condsel {

namespace {

std::string ConfigEcho(const RunConfig& c) {
  return fmt::format(
      "eta={} gamma={} epsilon={} k={} n_src={} n_tgt={} seed={} runs={} distance={} "
      "imagenet_column={}",
      c.eta, c.gamma, c.epsilon, c.k, c.n_src, c.n_tgt, c.seed, c.runs,
      SourceDistanceName(c.distance), c.imagenet_column.empty() ? "-" : c.imagenet_column);
}

}  // namespace

std::string FormatReportText(const EvalReport& report) {
  std::string out = "condsel leave-one-out report\n";
  out += "config: " + ConfigEcho(report.config) + "\n";
  out += fmt::format("models: {}  tasks: {}\n\n", report.models.size(), report.tasks.size());
  out += fmt::format("{:<10} {:>5} {:>18} {:>18} {:>18}\n", "method", "runs", "NDCG@k", "tau@k",
                     "Sum");
  for (const auto& [method, s] : report.summary) {
    out += fmt::format("{:<10} {:>5} {:>8.4f} ± {:<7.4f} {:>8.4f} ± {:<7.4f} {:>8.4f} ± {:<7.4f}\n",
                       method, s.runs, s.ndcg.mean, s.ndcg.std, s.tau.mean, s.tau.std, s.sum.mean,
                       s.sum.std);
  }
  out += "\nper-target (run 0):\n";
  for (const auto& r : report.rows) {
    if (r.run != 0) continue;
    out += fmt::format("  {:<12} {:<8} |I|={} ndcg={:.4f} tau={:.4f}  top:", r.metric.task_id,
                       r.method, r.metric.intersection_size, r.metric.ndcg, r.metric.tau);
    for (std::size_t i = 0; i < r.ranking.order.size() && i < report.config.k; ++i) {
      out += " " + r.ranking.order[i];
    }
    out += "\n";
  }
  return out;
}

std::string FormatMetricsCsv(const EvalReport& report) {
  std::string out = "run,target,method,k,intersection_size,ndcg,tau,sum\n";
  for (const auto& r : report.rows) {
    out += fmt::format("{},{},{},{},{},{:.12f},{:.12f},{:.12f}\n", r.run, r.metric.task_id,
                       r.method, r.metric.k, r.metric.intersection_size, r.metric.ndcg,
                       r.metric.tau, r.metric.sum);
  }
  return out;
}

std::string FormatRankingsCsv(const EvalReport& report) {
  std::string out = "run,target,method,position,model,score\n";
  for (const auto& r : report.rows) {
    for (std::size_t i = 0; i < r.ranking.order.size(); ++i) {
      const auto& m = r.ranking.order[i];
      out += fmt::format("{},{},{},{},{},{:.12f}\n", r.run, r.metric.task_id, r.method, i + 1, m,
                         r.ranking.scores.at(m));
    }
  }
  return out;
}

std::string FormatSummaryCsv(const EvalReport& report) {
  std::string out = "method,runs,ndcg_mean,ndcg_std,tau_mean,tau_std,sum_mean,sum_std\n";
  for (const auto& [method, s] : report.summary) {
    out += fmt::format("{},{},{:.12f},{:.12f},{:.12f},{:.12f},{:.12f},{:.12f}\n", method, s.runs,
                       s.ndcg.mean, s.ndcg.std, s.tau.mean, s.tau.std, s.sum.mean, s.sum.std);
  }
  return out;
}

std::string FormatPerRunCsv(const EvalReport& report) {
  std::string out = "method,run,ndcg,tau,sum\n";
  for (const auto& [method, s] : report.summary) {
    for (std::size_t r = 0; r < s.ndcg.per_run.size(); ++r) {
      out += fmt::format("{},{},{:.12f},{:.12f},{:.12f}\n", method, r, s.ndcg.per_run[r],
                         s.tau.per_run[r], s.sum.per_run[r]);
    }
  }
  return out;
}

void WriteReport(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WriteFile(dir / "report.txt", FormatReportText(report));
  WriteFile(dir / "metrics.csv", FormatMetricsCsv(report));
  WriteFile(dir / "rankings.csv", FormatRankingsCsv(report));
  WriteFile(dir / "summary.csv", FormatSummaryCsv(report));
  WriteFile(dir / "per_run.csv", FormatPerRunCsv(report));
}

std::vector<SweepCell> SweepTemperatures(const BundleSet& bundles, const AccuracyTable& table,
                                         const RunConfig& base, const std::vector<double>& etas,
                                         const std::vector<double>& gammas) {
  std::vector<SweepCell> cells;
  for (double eta : etas) {
    for (double gamma : gammas) {
      RunConfig cfg = base;
      cfg.eta = eta;
      cfg.gamma = gamma;
      cells.push_back({eta, gamma, cfg.n_src, LeaveOneOut(bundles, table, cfg).summary});
    }
  }
  return cells;
}

std::vector<SweepCell> SweepSourceSamples(const BundleSet& bundles, const AccuracyTable& table,
                                          const RunConfig& base,
                                          const std::vector<std::size_t>& n_srcs) {
  std::vector<SweepCell> cells;
  for (std::size_t n : n_srcs) {
    RunConfig cfg = base;
    cfg.n_src = n;
    cells.push_back({cfg.eta, cfg.gamma, n, LeaveOneOut(bundles, table, cfg).summary});
  }
  return cells;
}

std::string FormatSweepCsv(const std::vector<SweepCell>& cells) {
  std::string out =
      "eta,gamma,n_src,method,ndcg_mean,ndcg_std,tau_mean,tau_std,sum_mean,sum_std\n";
  for (const auto& c : cells) {
    for (const auto& [method, s] : c.summary) {
      out += fmt::format("{},{},{},{},{:.12f},{:.12f},{:.12f},{:.12f},{:.12f},{:.12f}\n", c.eta,
                         c.gamma, c.n_src, method, s.ndcg.mean, s.ndcg.std, s.tau.mean, s.tau.std,
                         s.sum.mean, s.sum.std);
    }
  }
  return out;
}

}  // namespace condsel
