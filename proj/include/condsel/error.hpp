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
#ifndef CONDSEL_ERROR_HPP_
#define CONDSEL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace condsel {

enum class ErrorKind {
  kShape,             // ragged rows, length mismatch, input dimension
  kInsufficientData,  // empty sample sets, too few tasks or sources
  kNumeric,           // non-finite intermediates
  kParameter,         // out-of-range arguments (k, eta, steps, ...)
  kLookup,            // unknown model / task / column
  kCrossModel,        // comparing representations of different models
  kDegenerateMass,    // salient set carries no importance mass
  kParse,             // malformed file
  kValidation,        // file parsed but violates an invariant
  kCoverage,          // missing (model, task) bundle
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

/// Every failure raised by the library. `kind()` lets callers branch without
/// matching on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace condsel

#endif  // CONDSEL_ERROR_HPP_
