#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mkin {

enum class ErrorCode {
  ZeroVector,
  NonSmoothBoundary,
  NonSmoothBall,
  InvalidBall,
  DomainViolation,
  IrregularCurve,
  NoIntersection,
  NotStarlike,
  BadParams,
  DegenerateDensity,
  MeasureMismatch,
  CenterPoint,
  NoCommonContact,
  TangentMismatch,
  PoleCoincidence,
  TranslativeMotion,
  NoRoot,
  OnInflectionCurve,
  ParseError,
  UnknownKey,
  UnresolvedName,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, int column, const std::string& what)
      : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace mkin
