#pragma once

namespace adtrw {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace adtrw
