#pragma once

namespace threshsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace threshsim
