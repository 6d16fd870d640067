#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace resha {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text where a structured value was expected (node IDs, category letters).
class FormatError : public Error {
 public:
  FormatError(std::string message, std::string segment)
      : Error(std::move(message)), segment_(std::move(segment)) {}

  const std::string& segment() const noexcept { return segment_; }

 private:
  std::string segment_;
};

enum class DiagnosticCode {
  kSyntax,
  kUnknownField,
  kMissingField,
  kBadValue,
  kDanglingLink,
  kDuplicateId,
  kHierarchy,
  kReference,
};

struct Diagnostic {
  DiagnosticCode code;
  std::string path;     // JSON pointer-ish location, or "offset N" for syntax errors
  std::string message;
};

std::string to_string(DiagnosticCode code);

/// Raised when a model document fails parsing or validation. Carries every
/// problem found, not just the first.
class ModelError : public Error {
 public:
  explicit ModelError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Fault-tree structure problems: cycles, bad references, bad VOTE arity.
class TreeError : public Error {
 public:
  using Error::Error;
};

/// A UCA could not be attached because its source has no failure node.
class IntegrationError : public Error {
 public:
  IntegrationError(std::string message, std::string uca_id)
      : Error(std::move(message)), uca_id_(std::move(uca_id)) {}

  const std::string& uca_id() const noexcept { return uca_id_; }

 private:
  std::string uca_id_;
};

/// Cut-set expansion exceeded its row budget.
class ResourceError : public Error {
 public:
  ResourceError(std::string message, std::string gate, std::size_t rows, std::size_t gates_done,
                std::size_t gates_total)
      : Error(std::move(message)),
        gate_(std::move(gate)),
        rows_(rows),
        gates_done_(gates_done),
        gates_total_(gates_total) {}

  const std::string& gate() const noexcept { return gate_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t gates_done() const noexcept { return gates_done_; }
  std::size_t gates_total() const noexcept { return gates_total_; }

 private:
  std::string gate_;
  std::size_t rows_;
  std::size_t gates_done_;
  std::size_t gates_total_;
};

}  // namespace resha
