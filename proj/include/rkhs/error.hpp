#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace rkhs {

/// Short %g rendering for error messages.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// All library failures derive from Error so callers (the CLI in particular)
// can map them onto a single "invalid input" exit path.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

class RangeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "range_error"; }
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition_violation"; }
};

class NotBoundedBelow : public Error {
 public:
  NotBoundedBelow(double sigma_min, double tol)
      : Error("operator is not bounded below at truncation scale: sigma_min = " +
              format_number(sigma_min) + " <= tol = " + format_number(tol)),
        sigma_min_(sigma_min) {}
  const char* kind() const noexcept override { return "not_bounded_below"; }
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

class NotContractive : public Error {
 public:
  NotContractive(double norm, double tol)
      : Error("operator norm " + format_number(norm) + " exceeds 1 + " +
              format_number(tol)),
        norm_(norm) {}
  const char* kind() const noexcept override { return "not_contractive"; }
  double norm() const noexcept { return norm_; }

 private:
  double norm_;
};

class NotCnp : public Error {
 public:
  NotCnp(std::size_t index, double value)
      : Error("kernel is not complete Nevanlinna-Pick: inverse-series coefficient " +
              std::to_string(index) + " = " + format_number(value) + " > 0"),
        index_(index) {}
  const char* kind() const noexcept override { return "not_cnp"; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class CertificationFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "certification_failure"; }
};

class NoUnitaryExtension : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "no_unitary_extension"; }
};

}  // namespace rkhs
