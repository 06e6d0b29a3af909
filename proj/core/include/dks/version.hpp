#pragma once

namespace dks {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dks
