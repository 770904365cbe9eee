#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace sqz {

/// Short %g rendering of a number for error messages.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Fock cutoff cannot hold the state within the declared tail tolerance.
class TruncationTooSmall : public Error {
 public:
  TruncationTooSmall(const std::string& what, double deficit, double tail_tol)
      : Error(what), deficit_(deficit), tail_tol_(tail_tol) {}

  double deficit() const { return deficit_; }
  double tail_tol() const { return tail_tol_; }

 private:
  double deficit_;
  double tail_tol_;
};

class PhaseMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

class CostGuard : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied configuration (CLI flags, config files, value types).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqz
