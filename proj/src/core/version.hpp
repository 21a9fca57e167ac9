#pragma once

namespace expbasis {

inline constexpr const char* kToolName = "expbasis";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

}  // namespace expbasis
