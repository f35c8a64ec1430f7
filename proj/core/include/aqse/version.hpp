#pragma once

namespace aqse {

inline constexpr const char* kVersionTag = "aqse 0.1.0";

}  // namespace aqse
