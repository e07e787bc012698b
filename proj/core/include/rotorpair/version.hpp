#pragma once

namespace rotorpair {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rotorpair
