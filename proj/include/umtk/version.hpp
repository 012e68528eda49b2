#pragma once

namespace umtk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace umtk
