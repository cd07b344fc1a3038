#pragma once

#include <stdexcept>
#include <string>

namespace murank {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonPrime : public Error {
public:
  using Error::Error;
};
class UnsupportedSize : public Error {
public:
  using Error::Error;
};
class DimensionMismatch : public Error {
public:
  using Error::Error;
};
class DuplicatePoint : public Error {
public:
  using Error::Error;
};
class CountMismatch : public Error {
public:
  using Error::Error;
};
class RangeError : public Error {
public:
  using Error::Error;
};
class BudgetExceeded : public Error {
public:
  using Error::Error;
};
class MissingTableEntry : public Error {
public:
  using Error::Error;
};
class TableError : public Error {
public:
  using Error::Error;
};
class DivisorConditionViolated : public Error {
public:
  using Error::Error;
};
class InvalidStep : public Error {
public:
  using Error::Error;
};
class BelowThreshold : public Error {
public:
  using Error::Error;
};
class StepNotFound : public Error {
public:
  using Error::Error;
};
class OutOfDomain : public Error {
public:
  using Error::Error;
};
class NotASquare : public Error {
public:
  using Error::Error;
};

}  // namespace murank
