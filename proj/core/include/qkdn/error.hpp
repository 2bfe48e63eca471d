#pragma once

#include <stdexcept>
#include <string>

namespace qkdn {

/// Root of every exception thrown by the library. Each module derives its
/// own error kinds from this so callers can catch per-module or globally.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace qkdn
