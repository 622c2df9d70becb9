#pragma once

#include <stdexcept>
#include <string>

namespace klsep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A family/rank combination the library cannot build.
class UnsupportedSpec : public Error {
 public:
  explicit UnsupportedSpec(const std::string& what)
      : Error("unsupported spec: " + what) {}
};

/// Raised when a root action is requested for a non-crystallographic group.
class NoRootDatum : public Error {
 public:
  explicit NoRootDatum(const std::string& what)
      : Error("no integral root datum: " + what) {}
};

/// A computed object violated a mathematical invariant. Always a bug.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what)
      : Error("invariant violation: " + what) {}
};

enum class ParseErrorKind {
  MalformedHeader,
  UnknownVersion,
  DanglingVertex,
  NonPositiveMu,
  EmptyGraph,
  MalformedBody,
  SpecMismatch,
};

inline const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedHeader: return "malformed header";
    case ParseErrorKind::UnknownVersion: return "unknown version";
    case ParseErrorKind::DanglingVertex: return "dangling vertex reference";
    case ParseErrorKind::NonPositiveMu: return "non-positive mu";
    case ParseErrorKind::EmptyGraph: return "empty group";
    case ParseErrorKind::MalformedBody: return "malformed line";
    case ParseErrorKind::SpecMismatch: return "spec mismatch";
  }
  return "parse error";
}

/// Error while reading one of the text formats (WG1, KLT1, SIGMA1).
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& detail)
      : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

}  // namespace klsep
