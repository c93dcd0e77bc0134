#pragma once

namespace glasso {
inline constexpr const char* kVersion = "glasso 1.0.0";
}
