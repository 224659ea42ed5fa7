#pragma once

#include <stdexcept>
#include <string>

namespace esolab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

// Raised when a system fails the observability / disturbance-channel
// conditions required for the observable-canonical transform.
struct AssumptionError : Error {
  using Error::Error;
};

struct UnobservableError : Error {
  using Error::Error;
};

struct DivergenceError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace esolab
