#pragma once

namespace fcs {

inline constexpr const char* version = "0.1.0";

}  // namespace fcs
