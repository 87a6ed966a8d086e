#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace witness {

/// Base class of every error raised by the analyzer.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed protocol, context or term text. Positions are 1-based.
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct UndeclaredAtom : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct UnknownAtom : Error {
  using Error::Error;
};

struct NotAKey : Error {
  using Error::Error;
};

/// Compound, variable or asymmetric key in an encryption.
struct UnsupportedKey : Error {
  using Error::Error;
};

struct AtomAbsent : Error {
  using Error::Error;
};

struct NoSource : Error {
  using Error::Error;
};

struct ChallengeNotReceived : Error {
  using Error::Error;
};

struct ChallengeAtomAbsent : Error {
  using Error::Error;
};

struct DepthExceeded : Error {
  using Error::Error;
};

}  // namespace witness
