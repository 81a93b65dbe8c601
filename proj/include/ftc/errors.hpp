#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftc {

/// Base of every error raised by the library. The CLI prints `what()` after an
/// `error:` prefix.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The ball's apex stays below the rim plane, so it never crosses rim height
/// on the way down.
class NeverReachesRim : public Error {
public:
  NeverReachesRim() : Error("launch never reaches rim height") {}
};

class NearSingularDiscriminant : public Error {
public:
  NearSingularDiscriminant() : Error("launch grazes rim height at its apex; gradient is singular") {}
};

class InvalidAxisSpec : public Error {
public:
  using Error::Error;
};

class InvalidStep : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class EmptyInput : public Error {
public:
  using Error::Error;
};

class MismatchedPlayers : public Error {
public:
  MismatchedPlayers() : Error("z-score maps cover different players") {}
};

class LengthMismatch : public Error {
public:
  LengthMismatch() : Error("series have different lengths") {}
};

class ZeroVariance : public Error {
public:
  ZeroVariance() : Error("series has zero variance") {}
};

class InsufficientPlayers : public Error {
public:
  using Error::Error;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

/// Unparseable or inconsistent CSV row. `line()` is 1-based and counts the header.
class RowError : public Error {
public:
  RowError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class InvalidArchetype : public Error {
public:
  using Error::Error;
};

class EmptySpan : public Error {
public:
  EmptySpan() : Error("date range is empty (end precedes start)") {}
};

} // namespace ftc
