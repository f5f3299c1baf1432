#pragma once

namespace searchlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace searchlab
