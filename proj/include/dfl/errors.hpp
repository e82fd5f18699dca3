#pragma once

#include <stdexcept>
#include <string>

namespace dfl {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input lies outside the sieve (or another configured numeric bound).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NotASolution : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Input violates a mathematical hypothesis of the statement being evaluated.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dfl
