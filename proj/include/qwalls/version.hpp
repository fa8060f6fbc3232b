#pragma once

namespace qwalls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qwalls
