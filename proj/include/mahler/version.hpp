#pragma once

namespace mahler {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mahler
