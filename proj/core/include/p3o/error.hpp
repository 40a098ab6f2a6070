#ifndef P3O_ERROR_HPP_
#define P3O_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace p3o {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad static setup: mismatched dimensions, invalid specs, bad config values.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Bad runtime argument: out-of-range action, misaligned batch, empty input.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

/// Non-finite values or a failed numeric operation.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// Operation not valid in the current state (cold buffer, stepping a terminal env).
class StateError : public Error {
 public:
  explicit StateError(const std::string& msg) : Error(msg) {}
};

/// Operation not supported by this object (e.g. tabular export of a continuous env).
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

}  // namespace p3o

#endif  // P3O_ERROR_HPP_
