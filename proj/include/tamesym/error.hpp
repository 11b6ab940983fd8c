// Copyright 2026 The tamesym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tamesym {

enum class ErrorCode {
  kNotPrime,
  kCapExceeded,
  kNotASubfield,
  kNotAGenerator,
  kZeroInput,
  kGeneratorNotInGroup,
  kInfiniteGroup,
  kNotIsotropic,
  kNotInAPrime,
  kInsufficientPrecision,
  kZeroFunction,
  kDegreeNonzero,
  kDegenerateEvaluation,
  kResidueBoundExceeded,
  kWitnessSearchExhausted,
  kParse,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception type; the code
// identifies the condition so callers can retry (kInsufficientPrecision) or
// map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code),
        detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace tamesym
