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
#include "condsel/error.hpp"

namespace condsel {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kLookup: return "lookup";
    case ErrorKind::kCrossModel: return "cross-model";
    case ErrorKind::kDegenerateMass: return "degenerate-mass";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kCoverage: return "coverage";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + " error: " + message),
      kind_(kind) {}

}  // namespace condsel
