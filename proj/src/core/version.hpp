#pragma once

namespace collapse {

inline constexpr const char* tool_name = "collapse-budget";
inline constexpr const char* tool_version = "0.1.0";

}  // namespace collapse
