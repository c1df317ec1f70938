#pragma once

namespace ppgrow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ppgrow
