#pragma once

namespace jamison {

// stamped into report hashes so cache entries die with the implementation
inline constexpr const char* kVersion = "0.1.0";

} // namespace jamison
