// Copyright 2026 The camp-opt Authors
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

#ifndef CAMPOPT_ERRORS_HPP_
#define CAMPOPT_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace campopt {

// Machine-readable failure codes. The CLI surfaces these verbatim in
// report.json when a run aborts, so the names are part of the tool's
// external interface and must stay stable.
enum class ErrorCode {
  SubstochasticityViolation,  // some row has sum_j |w_ij| >= 1
  WeightBudgetViolation,      // |w0| + sum_j |w_ij| + |wg| + |wb| > 1
  BiasRangeViolation,         // initial opinion outside [-1, 1]
  DimensionMismatch,
  SelfLoopError,
  ParseError,
  SolveFailure,          // linear solve missed its residual target
  ConcavityDomain,       // influence exponent outside the supported range
  AdversaryInfeasible,   // opposing camp cannot force the sum nonpositive
  GridTooLarge,          // oracle grid would exceed the enumeration cap
  InstanceTooLarge,      // oracle enumeration cap exceeded
  NumericalBreakdown,    // simplex pivot tolerance exhausted
  InfeasibleModel,       // model-level infeasibility (e.g. empty uncertainty set)
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SubstochasticityViolation: return "SubstochasticityViolation";
    case ErrorCode::WeightBudgetViolation: return "WeightBudgetViolation";
    case ErrorCode::BiasRangeViolation: return "BiasRangeViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SelfLoopError: return "SelfLoopError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::ConcavityDomain: return "ConcavityDomain";
    case ErrorCode::AdversaryInfeasible: return "AdversaryInfeasible";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::InfeasibleModel: return "InfeasibleModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by network construction. Carries one entry per violated row so a
// caller can report every bad node at once instead of fixing them one by one.
class ValidationError : public Error {
 public:
  struct Violation {
    ErrorCode code;
    int node;
    double magnitude;  // the offending row sum
  };

  ValidationError(std::vector<Violation> violations, const std::string& message)
      : Error(violations.empty() ? ErrorCode::InvalidArgument : violations.front().code,
              message),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Raised by the edge-list reader; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace campopt

#endif  // CAMPOPT_ERRORS_HPP_
