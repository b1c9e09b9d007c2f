#pragma once

namespace edgebench {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace edgebench
