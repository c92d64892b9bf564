// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// The estimate -> step loop shared by plain and instrumented runs.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zo/errors.hpp"
#include "zo/estimator.hpp"
#include "zo/objectives.hpp"
#include "zo/optimizers.hpp"
#include "zo/sampler.hpp"
#include "zo/trace.hpp"

namespace zo {

struct RunOptions {
    /// Fill value for v0 (and zero m0). Must be >= 0.
    double v0 = 0.0;
    /// Keep every n-th iteration in the trace; iteration 0 and T are always kept.
    std::uint64_t record_every = 1;
};

/// Record stride for a T-iteration run: 1 up to 10^4 iterations, else ceil(T / 10^4).
constexpr std::uint64_t default_record_stride(std::uint64_t iters) noexcept {
    constexpr std::uint64_t kMaxRows = 10000;
    return iters <= kMaxRows ? 1 : (iters + kMaxRows - 1) / kMaxRows;
}

/// Per-step hook. Called after every step with theta_{t-1}, the estimate g_t
/// and the post-step optimizer state; may return diagnostics for iteration t.
template <typename O>
concept StepObserver = requires(O& o, std::uint64_t t, std::span<const double> prev, std::span<const double> g,
                                const OptimizerState& st) {
    { o(t, prev, g, st) } -> std::convertible_to<std::optional<MomentDiagnostics>>;
};

struct NoObserver {
    std::optional<MomentDiagnostics> operator()(std::uint64_t, std::span<const double>, std::span<const double>,
                                                const OptimizerState&) const {
        return std::nullopt;
    }
};

namespace detail {

inline TraceRecord make_record(const ObjectiveSpec& spec, std::uint64_t iter, std::span<const double> theta,
                               double step_norm) {
    TraceRecord rec;
    rec.iter = iter;
    rec.fval = spec.value(theta);
    rec.gap = std::max(0.0, rec.fval - ObjectiveSpec::optimum_value());
    rec.step_norm = step_norm;
    return rec;
}

} // namespace detail

/// Runs T iterations and returns the trace, starting with the iteration-0
/// record. A library error during the run stops it; the records produced so
/// far are returned and the last one carries the error message.
template <StepObserver Observer>
std::vector<TraceRecord> run_observed(OptimizerKind kind, const ObjectiveSpec& spec, const EstimatorConfig& cfg,
                                      const HyperParams& hp, std::span<const double> theta0, std::uint64_t iters,
                                      std::uint64_t seed, const RunOptions& opts, Observer&& observer) {
    const std::size_t d = spec.dim();
    require_same_dim(theta0.size(), d, "run theta0");
    cfg.validate();
    if (opts.record_every == 0) throw ArgumentError("run: record_every must be >= 1");
    OptimizerState state = new_state(kind, d, hp, Vector(d, 0.0), Vector(d, opts.v0));

    RandomSource directions(seed, Stream::Directions);
    RandomSource noise(seed, Stream::Noise);

    Vector theta(theta0.begin(), theta0.end());
    Vector prev(d), g(d);
    EstimatorWorkspace ws;

    std::vector<TraceRecord> trace;
    trace.reserve(static_cast<std::size_t>(iters / opts.record_every + 2));
    try {
        trace.push_back(detail::make_record(spec, 0, theta, 0.0));
        for (std::uint64_t t = 1; t <= iters; ++t) {
            estimate_gradient_into(spec, theta, cfg, directions, noise, g, ws);
            std::copy(theta.begin(), theta.end(), prev.begin());
            step_in_place(state, theta, g);
            std::optional<MomentDiagnostics> diag = observer(t, prev, g, state);
            if (t % opts.record_every == 0 || t == iters) {
                TraceRecord rec = detail::make_record(spec, t, theta, distance(theta, prev));
                rec.diagnostics = std::move(diag);
                trace.push_back(std::move(rec));
            }
        }
    } catch (const Error& e) {
        if (trace.empty()) throw;
        trace.back().error = e.what();
    }
    return trace;
}

inline std::vector<TraceRecord> run(OptimizerKind kind, const ObjectiveSpec& spec, const EstimatorConfig& cfg,
                                    const HyperParams& hp, std::span<const double> theta0, std::uint64_t iters,
                                    std::uint64_t seed, const RunOptions& opts = {}) {
    return run_observed(kind, spec, cfg, hp, theta0, iters, seed, opts, NoObserver{});
}

} // namespace zo
