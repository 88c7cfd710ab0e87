#pragma once

#include <stdexcept>
#include <string>

namespace hypgrowth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The generated region is too small for the requested event.
class GuardBandError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured edge cap.
class OracleCapError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypgrowth
