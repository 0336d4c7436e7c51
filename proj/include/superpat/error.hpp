#pragma once

#include <stdexcept>
#include <string>

namespace superpat {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Domain,
  Capacity,
  Budget,
  MalformedEncoding,
  Io,
};

// Stable machine-readable name ("domain", "budget_exceeded", ...).
const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace superpat
