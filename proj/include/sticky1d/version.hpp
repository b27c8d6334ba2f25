#pragma once

namespace sticky1d {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sticky1d
