#include "tsclust/error.hpp"

namespace tsclust {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::PreconditionViolation: return "precondition_violation";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::SchemaError: return "schema_error";
    case ErrorCode::IoError: return "io_error";
    case ErrorCode::UnknownName: return "unknown_name";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Refused: return "refused";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace tsclust
