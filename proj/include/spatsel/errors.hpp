#pragma once

#include <stdexcept>
#include <string>

namespace spatsel {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// The K x K block of the covariance is numerically singular
// (reciprocal condition estimate below 1e-12). Signals a degenerate
// design, not a bug.
class SingularSubmatrix : public Error {
 public:
  explicit SingularSubmatrix(const std::string& msg, int index = -1)
      : Error(msg), index_(index) {}
  // 1-based offending variable index when known, -1 otherwise.
  int index() const { return index_; }

 private:
  int index_;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class FoldTooSmall : public Error {
 public:
  using Error::Error;
};

class AllFoldsFailed : public Error {
 public:
  using Error::Error;
};

class NotUnivariateResponse : public Error {
 public:
  using Error::Error;
};

class EmptyCell : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace spatsel
