// Copyright 2026 The sigev Authors
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

namespace sigev {

enum class ErrorCode {
  kAssumptionViolation,
  kInvalidDetector,
  kInvalidPrior,
  kInfeasibleShape,
  kOffPathMessage,
  kZeroDenominator,
  kEqualErrorRateAmbiguity,
  kWrongRegime,
  kEqualErrorRateUnsupported,
  kParseError,
  kUnsupportedFormat,
  kInvalidArgument,
  kVerificationFailed,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAssumptionViolation: return "AssumptionViolation";
    case ErrorCode::kInvalidDetector: return "InvalidDetector";
    case ErrorCode::kInvalidPrior: return "InvalidPrior";
    case ErrorCode::kInfeasibleShape: return "InfeasibleShape";
    case ErrorCode::kOffPathMessage: return "OffPathMessage";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kEqualErrorRateAmbiguity: return "EqualErrorRateAmbiguity";
    case ErrorCode::kWrongRegime: return "WrongRegime";
    case ErrorCode::kEqualErrorRateUnsupported: return "EqualErrorRateUnsupported";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

// Base class for every error raised by the library. The code is stable and
// machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by game validation. `assumption` is the 1-based index of the
// violated modelling assumption (1: cheap talk, 2-3: receiver preferences,
// 4-5: sender preferences).
class AssumptionViolation : public Error {
 public:
  AssumptionViolation(int assumption, const std::string& detail)
      : Error(ErrorCode::kAssumptionViolation,
              "assumption " + std::to_string(assumption) + " violated: " + detail),
        assumption_(assumption) {}

  int assumption() const noexcept { return assumption_; }

 private:
  int assumption_;
};

// Raised by the scenario reader. Line and column are 1-based; both are 0 for
// document-level problems such as missing keys.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& detail)
      : Error(ErrorCode::kParseError, where(line, column) + detail),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string where(int line, int column) {
    if (line == 0) return {};
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
  }

  int line_;
  int column_;
};

}  // namespace sigev
