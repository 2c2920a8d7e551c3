#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigidity {

/// Machine-readable failure category. The CLI maps these to the `reason`
/// field of error reports.
enum class ErrorKind {
  kParse,
  kInvalidArgument,
  kInvalidTriangulation,
  kNotRigid,
  kDegeneratePins,
  kPathBudgetExceeded,
  kExcessiveFailures,
  kDisagreement,
  kHypothesisNotEstablished,
  kNoContractibleEdge,
  kBudgetExhausted,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse_error";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kInvalidTriangulation: return "invalid_triangulation";
    case ErrorKind::kNotRigid: return "not_rigid";
    case ErrorKind::kDegeneratePins: return "degenerate_pins";
    case ErrorKind::kPathBudgetExceeded: return "path_budget_exceeded";
    case ErrorKind::kExcessiveFailures: return "excessive_failures";
    case ErrorKind::kDisagreement: return "disagreement";
    case ErrorKind::kHypothesisNotEstablished: return "hypothesis_not_established";
    case ErrorKind::kNoContractibleEdge: return "no_contractible_edge";
    case ErrorKind::kBudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(ErrorKind::kParse,
              line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace rigidity
