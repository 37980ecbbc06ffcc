#pragma once

namespace partbn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace partbn
