#pragma once

namespace lcp {

inline constexpr const char* version = "0.1.0";

} // namespace lcp
