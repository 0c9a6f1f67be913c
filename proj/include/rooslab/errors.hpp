#pragma once

#include <stdexcept>
#include <string>

namespace rooslab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// d_out * d_in != 0: the two maps do not form a complex.
class CompositionError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IndexNotDominatingError : public Error {
 public:
  using Error::Error;
};

class JoinNotUpperBoundError : public Error {
 public:
  using Error::Error;
};

class JoinNotMonotoneError : public Error {
 public:
  using Error::Error;
};

class HorizonTooSmallError : public Error {
 public:
  using Error::Error;
};

class EqualBranchError : public Error {
 public:
  using Error::Error;
};

/// Located document error; `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(line == 0 ? reason
                        : "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace rooslab
