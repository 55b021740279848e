#pragma once

namespace spltest {

inline constexpr const char* kVersion = "0.1.0";

// Version of the on-disk report/manifest schemas.
inline constexpr int kSchemaVersion = 1;

} // namespace spltest
