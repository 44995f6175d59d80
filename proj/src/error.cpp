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

#include "unisheaf/error.hpp"

namespace unisheaf {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLevelError: return "LevelError";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNotAUnit: return "NotAUnit";
    case ErrorCode::kEmptyWindow: return "EmptyWindow";
    case ErrorCode::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotEllipticCharacteristic: return "NotEllipticCharacteristic";
    case ErrorCode::kCharacteristicCollision: return "CharacteristicCollision";
    case ErrorCode::kTowerBudgetExceeded: return "TowerBudgetExceeded";
    case ErrorCode::kDepthTooShallow: return "DepthTooShallow";
    case ErrorCode::kZeroTheta: return "ZeroTheta";
    case ErrorCode::kWindowTooSmall: return "WindowTooSmall";
    case ErrorCode::kRankNotOne: return "RankNotOne";
    case ErrorCode::kGuardBandTooNarrow: return "GuardBandTooNarrow";
    case ErrorCode::kDegenerateDeterminant: return "DegenerateDeterminant";
    case ErrorCode::kStoreCorrupt: return "StoreCorrupt";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace unisheaf
