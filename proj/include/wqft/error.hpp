#pragma once

#include <stdexcept>
#include <string>

namespace wqft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Requested level / system size leaves an empty or inconsistent index range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class RegulatorRequiredError : public Error {
 public:
  using Error::Error;
};

class NegativeRadicandError : public Error {
 public:
  using Error::Error;
};

class NegativeEigenvalueError : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix violates the uncertainty principle (sigma < 1/2).
class NonPhysicalStateError : public Error {
 public:
  using Error::Error;
};

class EmptyRegionError : public Error {
 public:
  using Error::Error;
};

class WindowTooSmallError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wqft
