#pragma once

namespace spde2m {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spde2m
