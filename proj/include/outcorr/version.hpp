#pragma once

namespace outcorr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace outcorr
