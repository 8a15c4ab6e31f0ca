// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pvqe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (FCIDUMP records, Pauli-sum text, JSON config).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An orbital, mode, or qubit index outside its declared range.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Operands with incompatible qubit counts or vector lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated (e.g. non-anti-Hermitian
/// generator, asymmetric integrals).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A floating-point consistency check failed (complex expectation of a
/// Hermitian operator, indefinite overlap, singular projected system).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pvqe
