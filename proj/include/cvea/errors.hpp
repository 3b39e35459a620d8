#pragma once

#include <stdexcept>
#include <string>

namespace cvea {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map it to an exit code in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidChannel : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

class DegenerateState : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvea
