#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace macq {

enum class ErrorKind {
  ConfigError,
  DomainError,
  InvalidQuery,
  CapExceeded,
  BudgetExceeded,
  Incomplete,
  Inconsistent,
  AdversaryInconsistent,
  AmbiguousLeaf,
  ParseError,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidQuery: return "InvalidQuery";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Incomplete: return "Incomplete";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::AdversaryInconsistent: return "AdversaryInconsistent";
    case ErrorKind::AmbiguousLeaf: return "AmbiguousLeaf";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `what()` is "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace macq
