#pragma once

namespace peterlin {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace peterlin
