// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace zo {

/// Per-iteration moment-quality measurements. A field is absent when the
/// optimizer has no such moment (or the reference is all zeros).
struct MomentDiagnostics {
    std::optional<double> cos_g;
    std::optional<double> cos_m;
    std::optional<double> relerr_v_ori;
    std::optional<double> relerr_v_ours;

    friend bool operator==(const MomentDiagnostics&, const MomentDiagnostics&) = default;
};

/// One row of a run trace. fval is the noise-free F(theta_t); gap is fval - min F, clamped at 0.
struct TraceRecord {
    std::uint64_t iter = 0;
    double fval = 0.0;
    double gap = 0.0;
    double step_norm = 0.0;
    std::optional<MomentDiagnostics> diagnostics;
    /// Set on the final record of a run that aborted.
    std::optional<std::string> error;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

} // namespace zo
