// Copyright 2026 The unisheaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNISHEAF_ERROR_HPP_
#define UNISHEAF_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace unisheaf {

// Every failure mode has its own code. The numeric values double as process
// exit codes of the command line tool.
enum class ErrorCode : int {
  kInvalidArgument = 10,
  kLevelError = 11,
  kDivisionByZero = 12,
  kNotAUnit = 13,
  kEmptyWindow = 14,
  kPrecisionExhausted = 15,
  kDimensionMismatch = 16,
  kNotEllipticCharacteristic = 17,
  kCharacteristicCollision = 18,
  kTowerBudgetExceeded = 19,
  kDepthTooShallow = 20,
  kZeroTheta = 21,
  kWindowTooSmall = 22,
  kRankNotOne = 23,
  kGuardBandTooNarrow = 24,
  kDegenerateDeterminant = 25,
  kStoreCorrupt = 26,
  kIoError = 27,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace unisheaf

#endif  // UNISHEAF_ERROR_HPP_
