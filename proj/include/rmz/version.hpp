#pragma once

namespace rmz {
inline constexpr const char* kVersion = "0.1.0";
}
