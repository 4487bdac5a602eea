#pragma once

namespace harmcanon {

inline constexpr const char* kVersion = "0.1.0";

} // namespace harmcanon
