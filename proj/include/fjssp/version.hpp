#pragma once

namespace fjssp {

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace fjssp
