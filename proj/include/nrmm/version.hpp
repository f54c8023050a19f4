#pragma once

namespace nrmm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nrmm
