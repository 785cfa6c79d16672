// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_ERROR_H_
#define TINYGAIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace tinygait {

// Root of every error thrown by the library. The CLI maps the concrete
// subclasses onto exit codes (DataError -> 3, DomainError -> 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data: bad magic, truncation, shape
// mismatch, unparseable config.
class DataError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public DataError {
 public:
  using DataError::DataError;
};

class FormatError : public DataError {
 public:
  using DataError::DataError;
};

// Well-formed input outside the mathematical domain of an operation
// (out-of-workspace IK target, requant ratio overflow, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace tinygait

#endif  // TINYGAIT_ERROR_H_
