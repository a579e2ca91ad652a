#pragma once

namespace varcap {

inline constexpr const char* kToolName = "varcap";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace varcap
