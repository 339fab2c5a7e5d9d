#pragma once

#include <stdexcept>
#include <string>

namespace bcert {

enum class ErrorCode {
  invalid_argument,
  parse,
  numerical,
  budget,
  io,
  internal,
};

// Every failure raised by the library carries one of these codes; the C API
// maps them one-to-one onto bcert_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bcert
