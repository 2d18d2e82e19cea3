#pragma once

namespace bartnik {

inline constexpr const char* kSchemaTag = "bartnik-forge/1";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace bartnik
