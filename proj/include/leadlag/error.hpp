#pragma once

#include <stdexcept>
#include <string>

namespace leadlag {

// Base of every error thrown by the library. The subclasses map onto the
// CLI exit codes: usage 1, data/validation 2, numerical 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace leadlag
