#pragma once

#include <stdexcept>
#include <string>

namespace expbasis {

// Error taxonomy shared by the whole library. The C API maps these 1:1 onto
// eb_status codes; inside the C++ core they travel as exceptions.
enum class ErrorCode {
  invalid_argument,  // bad parameters, precondition violations
  shape,             // non-square / dimension mismatch
  singular,          // matrix (near-)singular where invertibility is required
  size_limit,        // instance exceeds a documented size bound
  parse,             // malformed textual input
  io,                // file read/write failure
  unsupported,       // configuration outside the supported domain
  not_found,         // unknown fixture id or similar lookup miss
  verification,      // certificate unreadable or schema mismatch
  internal,          // invariant breach; indicates a bug
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace expbasis
