#include "core/errors.hpp"

namespace expbasis {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::shape: return "shape-error";
    case ErrorCode::singular: return "singular-matrix";
    case ErrorCode::size_limit: return "size-limit";
    case ErrorCode::parse: return "parse-error";
    case ErrorCode::io: return "io-error";
    case ErrorCode::unsupported: return "unsupported-configuration";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::verification: return "verification-error";
    case ErrorCode::internal: return "internal-error";
  }
  return "unknown";
}

}  // namespace expbasis
