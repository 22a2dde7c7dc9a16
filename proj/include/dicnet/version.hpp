#pragma once

namespace dicnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dicnet
