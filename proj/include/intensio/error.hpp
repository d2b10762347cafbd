#pragma once

// intensio/error.hpp - error kinds, source spans and the exception type
// thrown by every module.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace intensio {

enum class ErrorKind {
  SortMismatch,
  ReservedCharacter,
  UnboundVariable,
  ArityMismatch,
  TypeError,
  UnknownRelation,
  UnknownAttribute,
  NoSharedAttributes,
  SchemaMismatch,
  UnknownConcept,
  DuplicateName,
  CycleDetected,
  EncapsulationViolation,
  UnknownPotentialObject,
  IndexNotInDomain,
  UnknownEvolvent,
  UnknownRequestKind,
  UnknownSort,
  UnknownDomain,
  UnknownFilter,
  UnknownDiagram,
  UnknownScript,
  ShapeMismatch,
  NotFound,
  ScriptStepFailed,
  SyntaxError,
  IoError,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::ReservedCharacter: return "ReservedCharacter";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::UnknownRelation: return "UnknownRelation";
    case ErrorKind::UnknownAttribute: return "UnknownAttribute";
    case ErrorKind::NoSharedAttributes: return "NoSharedAttributes";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::UnknownConcept: return "UnknownConcept";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::EncapsulationViolation: return "EncapsulationViolation";
    case ErrorKind::UnknownPotentialObject: return "UnknownPotentialObject";
    case ErrorKind::IndexNotInDomain: return "IndexNotInDomain";
    case ErrorKind::UnknownEvolvent: return "UnknownEvolvent";
    case ErrorKind::UnknownRequestKind: return "UnknownRequestKind";
    case ErrorKind::UnknownSort: return "UnknownSort";
    case ErrorKind::UnknownDomain: return "UnknownDomain";
    case ErrorKind::UnknownFilter: return "UnknownFilter";
    case ErrorKind::UnknownDiagram: return "UnknownDiagram";
    case ErrorKind::UnknownScript: return "UnknownScript";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::ScriptStepFailed: return "ScriptStepFailed";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Byte range in a source text plus the 1-based line/column of its start.
/// A default span (length 0, line 0) means "no source location".
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  [[nodiscard]] bool known() const noexcept { return line != 0; }

  /// Smallest span covering both.
  [[nodiscard]] static Span cover(const Span& first, const Span& last) noexcept {
    if (!first.known()) return last;
    if (!last.known()) return first;
    Span s = first;
    s.length = last.offset + last.length - first.offset;
    return s;
  }

  // Spans are metadata; they never participate in value equality.
  friend bool operator==(const Span&, const Span&) noexcept { return true; }
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Raised by run_script when a step fails. Carries the 1-based step index
/// and the kind of the underlying error.
class ScriptError : public Error {
 public:
  ScriptError(std::size_t step, const Error& cause)
      : Error(ErrorKind::ScriptStepFailed, "step " + std::to_string(step) + ": " + cause.what()),
        step_(step),
        cause_(cause.kind()) {}

  [[nodiscard]] std::size_t step() const noexcept { return step_; }
  [[nodiscard]] ErrorKind cause() const noexcept { return cause_; }

 private:
  std::size_t step_;
  ErrorKind cause_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace intensio
