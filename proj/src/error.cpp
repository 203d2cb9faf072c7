#include "vibdiag/error.hpp"

namespace vibdiag {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Initialization: return "initialization failure";
  }
  return "unknown error";
}

}  // namespace vibdiag
