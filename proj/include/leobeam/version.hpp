#pragma once

namespace leobeam {

inline constexpr const char* tool_name = "leobeam";
inline constexpr const char* tool_version = "0.1.0";

} // namespace leobeam
