#pragma once

#include <stdexcept>
#include <string>

namespace lva {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid user input (Gram matrices, ring tokens, files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A closure or enumeration exceeded its configured element cap.
class ResourceCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A precondition on mathematical data was violated (non-root reflection,
/// non-mu2 cover data, inconsistent cocycle extension, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A rational could not be mapped into the target ring because its
/// denominator is not a unit there.
class SpecializationError : public Error {
 public:
  using Error::Error;
};

}  // namespace lva
