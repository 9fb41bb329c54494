#pragma once

#include <stdexcept>
#include <string>

namespace knotscan {

/// Base class of everything the library throws on bad input or exhausted budgets.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed PD, DT or braid text, or a code that does not describe a knot.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates a precondition (link instead of knot,
/// index out of range, non-quasipositive presentation, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured crossing, generator or recursion budget was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Khovanov ranks that admit no decomposition compatible with Lee's spectral
/// sequence. Either the homology is wrong or the input is extraordinary.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

}  // namespace knotscan
