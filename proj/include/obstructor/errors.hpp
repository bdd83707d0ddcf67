#pragma once

#include <stdexcept>
#include <string>

namespace obstructor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose lengths or shapes do not line up.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A structure failed one of its defining checks (associativity, unit,
/// involution, homomorphism, cover compatibility, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Text input that could not be parsed. `position` is a byte offset, or
/// npos when the error is not tied to a location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = std::string::npos)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A randomized search ran out of attempts.
class SearchFailed : public Error {
 public:
  SearchFailed(const std::string& what, int tries) : Error(what), tries_(tries) {}
  int tries() const { return tries_; }

 private:
  int tries_;
};

}  // namespace obstructor
