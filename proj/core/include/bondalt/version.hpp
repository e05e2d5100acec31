#pragma once

namespace bondalt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bondalt
