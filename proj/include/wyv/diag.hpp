#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wyv {

struct SourcePos {
  int line = 0;  // 1-based; 0 means "no position"
  int col = 0;
};

struct SourceSpan {
  SourcePos begin;
  SourcePos end;
};

inline std::string to_string(const SourcePos& p) {
  return std::to_string(p.line) + ":" + std::to_string(p.col);
}

/// Base class for all input-rejection errors (syntax, typing, contracts).
/// The CLI maps these to exit code 2.
class VerifierError : public std::runtime_error {
 public:
  VerifierError(std::string kind, SourcePos pos, const std::string& msg)
      : std::runtime_error(kind + " at " + to_string(pos) + ": " + msg),
        kind_(std::move(kind)),
        pos_(pos),
        message_(msg) {}

  const std::string& kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  std::string kind_;
  SourcePos pos_;
  std::string message_;
};

class ParseError : public VerifierError {
 public:
  ParseError(SourcePos pos, const std::string& msg,
             std::vector<std::string> expected = {})
      : VerifierError("parse error", pos, msg), expected_(std::move(expected)) {}

  /// Tokens the parser would have accepted at the error position.
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class TypeError : public VerifierError {
 public:
  TypeError(SourcePos pos, const std::string& msg)
      : VerifierError("type error", pos, msg) {}
};

/// Contract-shape violations: unnamed invariants, missing decreasing
/// clauses, duplicate names, misplaced returns.
class ContractError : public VerifierError {
 public:
  ContractError(SourcePos pos, const std::string& msg)
      : VerifierError("contract error", pos, msg) {}
};

}  // namespace wyv
