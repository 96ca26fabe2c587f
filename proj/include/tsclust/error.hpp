#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsclust {

enum class ErrorCode {
  InvalidArgument,
  PreconditionViolation,
  ParseError,
  SchemaError,
  IoError,
  UnknownName,
  Overflow,
  Refused,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the C
// layer can map it onto a status value without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace tsclust
