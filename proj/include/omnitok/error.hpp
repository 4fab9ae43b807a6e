// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omnitok {

enum class ErrorCode {
  InvalidInput,
  BudgetInfeasible,
  OversizeSequence,
  MalformedStream,
  InvalidState,
  Io,
  Parse,
  // Broken internal invariant. Everything else is a caller/input problem.
  InvariantViolation,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool is_input_error() const noexcept { return code_ != ErrorCode::InvariantViolation; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

inline void check_invariant(bool condition, const char* what) {
  if (!condition) fail(ErrorCode::InvariantViolation, std::string("invariant violated: ") + what);
}

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::BudgetInfeasible: return "budget-infeasible";
    case ErrorCode::OversizeSequence: return "oversize-sequence";
    case ErrorCode::MalformedStream: return "malformed-stream";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::InvariantViolation: return "invariant-violation";
  }
  return "unknown";
}

}  // namespace omnitok
