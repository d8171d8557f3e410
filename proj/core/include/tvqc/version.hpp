#pragma once

namespace tvqc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tvqc
