#pragma once

#include <stdexcept>
#include <string>

namespace dlcat {

// Base class for every failure raised by the library. The CLI maps the
// concrete subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic outside the domain of an operation (0^-1, order of 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input data: Cartan matrices, datum files, n-matrix files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Enumeration of a Coxeter group exceeded its element cap.
class InfiniteGroupError : public Error {
 public:
  using Error::Error;
};

// Mixing operands from different groups or blocks, or a bad argument.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A prime that must differ from the characteristic (or must not divide q).
class InvalidModulus : public Error {
 public:
  using Error::Error;
};

// Requested computation exists only for split data or small groups.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Conjectural feature requested without the explicit opt-in flag.
class GatedFeatureError : public Error {
 public:
  using Error::Error;
};

// A checked identity failed. Never swallowed.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

// Brute-force oracle asked to enumerate more points than its cap allows.
class OracleRangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlcat
