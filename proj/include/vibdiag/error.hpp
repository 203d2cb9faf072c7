#pragma once

#include <stdexcept>
#include <string>

namespace vibdiag {

enum class ErrorKind {
  InvalidInput,      // data violates a type or operation precondition
  DegenerateInput,   // zero variance / zero energy where a ratio is needed
  InvalidParameter,  // filter or algorithm parameters out of range
  Configuration,     // user configuration is inconsistent or incomplete
  Parse,             // malformed file content
  Io,                // file cannot be opened / written
  Initialization,    // optimizer could not find a single finite candidate
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace vibdiag
