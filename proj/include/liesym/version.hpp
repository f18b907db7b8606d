#pragma once

namespace liesym {

inline constexpr const char* kVersion = "0.1.0";

}
