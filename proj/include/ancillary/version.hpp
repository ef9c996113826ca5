#pragma once

namespace ancillary {

inline constexpr const char* version = "0.1.0";

}  // namespace ancillary
