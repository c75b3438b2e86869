#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace calib {

// Base class for all toolkit errors.  `code()` is a stable machine-parseable
// identifier; the CLI prints it verbatim on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        message_(message) {}

  const std::string& code() const noexcept { return code_; }
  // The human-readable part alone; what() prepends the code.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string code_;
  std::string message_;
};

class EmptySampleError : public Error {
 public:
  explicit EmptySampleError(const std::string& message = "sample has no entries")
      : Error("EmptySample", message) {}
};

// An entry failed range validation; carries the offending index.
class OutOfRangeError : public Error {
 public:
  OutOfRangeError(std::size_t index, const std::string& message)
      : Error("OutOfRange", "entry " + std::to_string(index) + ": " + message),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Exhaustive enumeration was requested beyond the supported cap.
class TooLargeError : public Error {
 public:
  TooLargeError(std::size_t size, std::size_t cap)
      : Error("TooLarge", "size " + std::to_string(size) +
                              " exceeds enumeration cap " + std::to_string(cap)),
        size_(size) {}

  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
};

class BadAlphaError : public Error {
 public:
  explicit BadAlphaError(double alpha)
      : Error("BadAlpha", "alpha must be >= 1, got " + std::to_string(alpha)) {}
};

class BadBinCountError : public Error {
 public:
  explicit BadBinCountError(const std::string& message)
      : Error("BadBinCount", message) {}
};

class IndexMismatchError : public Error {
 public:
  explicit IndexMismatchError(const std::string& message)
      : Error("IndexMismatch", message) {}
};

class LengthMismatchError : public Error {
 public:
  LengthMismatchError(std::size_t lhs, std::size_t rhs)
      : Error("LengthMismatch", "sequence lengths differ: " +
                                    std::to_string(lhs) + " vs " +
                                    std::to_string(rhs)) {}
};

class NonBinaryTargetsError : public Error {
 public:
  NonBinaryTargetsError()
      : Error("NonBinaryTargets", "operation requires targets in {0, 1}") {}
};

// Internal consistency check failed (e.g. incompatible bounds).
class InconsistentError : public Error {
 public:
  explicit InconsistentError(const std::string& message)
      : Error("Inconsistent", message) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("ParseError", "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BadMeasureError : public Error {
 public:
  explicit BadMeasureError(const std::string& name)
      : Error("BadMeasure", "unknown measure '" + name + "'") {}
};

class BadSourceError : public Error {
 public:
  explicit BadSourceError(const std::string& message)
      : Error("BadSource", message) {}
};

// Generic precondition violation not covered by a more specific class.
class BadArgumentError : public Error {
 public:
  explicit BadArgumentError(const std::string& message)
      : Error("BadArgument", message) {}
};

}  // namespace calib
