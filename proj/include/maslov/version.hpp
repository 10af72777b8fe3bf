#pragma once

namespace maslov {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace maslov
