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
#ifndef CONDSEL_HARNESS_REPORT_HPP_
#define CONDSEL_HARNESS_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "condsel/harness/pipeline.hpp"

namespace condsel {

/// Human-readable summary table plus the config echo.
std::string FormatReportText(const EvalReport& report);

/// run,target,method,k,intersection_size,ndcg,tau,sum
std::string FormatMetricsCsv(const EvalReport& report);

/// run,target,method,position,model,score
std::string FormatRankingsCsv(const EvalReport& report);

/// method,runs,ndcg_mean,ndcg_std,tau_mean,tau_std,sum_mean,sum_std
std::string FormatSummaryCsv(const EvalReport& report);

/// method,run,ndcg,tau,sum (one row per run; boxplot input)
std::string FormatPerRunCsv(const EvalReport& report);

/// report.txt, metrics.csv, rankings.csv, summary.csv, per_run.csv under `dir`.
void WriteReport(const EvalReport& report, const std::filesystem::path& dir);

struct SweepCell {
  double eta = 0.0;
  double gamma = 0.0;
  std::size_t n_src = 0;
  std::map<std::string, MetricSummary> summary;
};

/// One leave-one-out evaluation per (eta, gamma) pair.
std::vector<SweepCell> SweepTemperatures(const BundleSet& bundles, const AccuracyTable& table,
                                         const RunConfig& base, const std::vector<double>& etas,
                                         const std::vector<double>& gammas);

/// One leave-one-out evaluation per source sample count.
std::vector<SweepCell> SweepSourceSamples(const BundleSet& bundles, const AccuracyTable& table,
                                          const RunConfig& base,
                                          const std::vector<std::size_t>& n_srcs);

/// eta,gamma,n_src,method,ndcg_mean,ndcg_std,tau_mean,tau_std,sum_mean,sum_std
std::string FormatSweepCsv(const std::vector<SweepCell>& cells);

}  // namespace condsel

#endif  // CONDSEL_HARNESS_REPORT_HPP_
