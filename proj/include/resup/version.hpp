#pragma once

namespace resup {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace resup
