#pragma once

namespace remo {
inline constexpr const char* kVersion = "0.1.0";
}
