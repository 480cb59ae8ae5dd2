#pragma once

namespace dimens {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dimens
