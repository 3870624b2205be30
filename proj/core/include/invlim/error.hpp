#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invlim {

enum class ErrorKind {
  // poset
  DuplicateLabel,
  UnknownElement,
  CycleDetected,
  // set systems
  MissingBond,
  NotFunction,
  FunctorialityViolation,
  BudgetExceeded,
  NoMaximum,
  NotSurjective,
  NotCommuting,
  EmptyFiber,
  SigmaNotInjective,
  NotAThread,
  // abelian groups
  DimensionMismatch,
  InvalidHom,
  // derived limits
  NotLevelwiseExact,
  SquaresDoNotCommute,
  // constructions
  OddLength,
  NotMember,
  NotComparable,
  NoStrictUpper,
  NotCompatible,
  SupportExceedsBound,
  LevelMismatch,
  // text format
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind is the stable part; the
/// message carries the offending labels or line numbers.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace invlim
