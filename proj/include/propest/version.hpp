#pragma once

namespace propest {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace propest
