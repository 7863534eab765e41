#pragma once

#include <stdexcept>
#include <string>

namespace qctx {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition (non-Hermitian operator,
/// non-commuting family, r outside (0,1], ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A restriction or coarse-graining was requested along a pair of contexts
/// that are not ordered by inclusion.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or literal.
class InputError : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace qctx
