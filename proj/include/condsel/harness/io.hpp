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
#ifndef CONDSEL_HARNESS_IO_HPP_
#define CONDSEL_HARNESS_IO_HPP_

// Accuracy tables, gap matrices and network definitions on disk.
//
// Accuracy CSV: header "model,<task>,<task>,...", then one row per model with
// accuracies in [0, 1].
//
// Gap matrix CSV: header "task,<task>,...", then one row per task; the matrix
// must be square, symmetric and zero on the diagonal.
//
// Network JSON:
//   {"format": "condsel-toynet", "version": 1, "input_dim": 3,
//    "blocks": [{"kind": "affine_tanh", "weight": [[...], ...], "bias": [...]}, ...]}

#include <filesystem>
#include <string>
#include <vector>

#include "condsel/analysis.hpp"
#include "condsel/attribution.hpp"
#include "condsel/rankagg.hpp"

namespace condsel {

AccuracyTable ParseAccuracyCsv(const std::string& text, const std::string& origin = "<memory>");
AccuracyTable LoadAccuracyTable(const std::filesystem::path& path);
std::string SerializeAccuracyCsv(const AccuracyTable& table);

std::string SerializeGapMatrixCsv(const GapMatrix& gap);
GapMatrix ParseGapMatrixCsv(const std::string& text, GapKind kind, std::string model_id,
                            const std::string& origin = "<memory>");
GapMatrix LoadGapMatrix(const std::filesystem::path& path, GapKind kind, std::string model_id);

/// Square matrix with identical row/column labels.
std::string SerializeLabeledMatrixCsv(const std::vector<std::string>& labels, const Matrix& m,
                                      const std::string& corner = "id");

std::string SerializeNetwork(const ToyNetwork& net);
ToyNetwork ParseNetwork(const std::string& text, const std::string& origin = "<memory>");
ToyNetwork LoadNetwork(const std::filesystem::path& path);
void SaveNetwork(const ToyNetwork& net, const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& content);

}  // namespace condsel

#endif  // CONDSEL_HARNESS_IO_HPP_
