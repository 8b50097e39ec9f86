#pragma once

namespace simplex_interp {

inline constexpr const char* artifact_version = "1.0.0";

}  // namespace simplex_interp
