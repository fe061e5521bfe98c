#pragma once

namespace oklim {
inline constexpr const char* version = "0.1.0";
}
