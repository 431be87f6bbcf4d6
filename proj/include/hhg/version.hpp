#pragma once

namespace hhg {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace hhg
