// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace rta {

inline constexpr const char* kToolName = "rta-verify";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace rta
