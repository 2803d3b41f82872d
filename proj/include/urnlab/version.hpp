#pragma once

namespace urnlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace urnlab
