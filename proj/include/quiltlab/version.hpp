#pragma once

namespace quiltlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace quiltlab
