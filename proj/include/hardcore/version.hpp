#pragma once

namespace hardcore {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hardcore
