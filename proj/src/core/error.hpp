#pragma once

#include <stdexcept>
#include <string>

namespace xlt {

// Error codes mirrored by the C API.
enum class ErrorCode {
  invalid_argument,
  io,
  parse,
  config,
  translation,
  unsupported,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace xlt
