#pragma once

namespace klsep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace klsep
