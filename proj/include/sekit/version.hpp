#pragma once

namespace sekit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolkitName = "sekit";

}  // namespace sekit
