// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Random-direction finite-difference gradient estimator:
//
//   g = (d / K) * sum_k [ (f(theta + mu*u_k; xi) - f(theta; xi)) / mu ] * u_k
//
// with u_k i.i.d. uniform on the unit sphere. One noise realization xi is
// drawn per estimate and shared by all K + 1 evaluations, and the central
// value f(theta; xi) is computed once, so every estimate costs K + 1 calls.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>

#include "zo/errors.hpp"
#include "zo/sampler.hpp"
#include "zo/vector_ops.hpp"

namespace zo {

/// Anything the estimator can probe: a dimension, a noise draw, and f(theta; xi).
template <typename F>
concept NoisyObjective = requires(const F& f, std::span<const double> theta, double xi, RandomSource& rng) {
    { f.dim() } -> std::convertible_to<std::size_t>;
    { f.draw_noise(rng) } -> std::convertible_to<double>;
    { f.noisy_value(theta, xi) } -> std::convertible_to<double>;
};

struct EstimatorConfig {
    double mu = 0.005; ///< smoothing radius
    std::size_t k = 10; ///< directions per estimate

    void validate() const {
        if (!(mu > 0.0) || !std::isfinite(mu)) throw ArgumentError("estimator: mu must be finite and > 0");
        if (k < 1) throw ArgumentError("estimator: k must be >= 1");
    }
};

struct GradientEstimate {
    Vector components;
    std::size_t evaluations_used = 0;
};

namespace detail {

template <NoisyObjective F>
double checked_eval(const F& f, std::span<const double> theta, double xi) {
    const double value = f.noisy_value(theta, xi);
    if (!std::isfinite(value))
        throw EvaluationError("estimator: non-finite function value", Vector(theta.begin(), theta.end()));
    return value;
}

} // namespace detail

/// Reusable buffers for the hot loop; one per run.
struct EstimatorWorkspace {
    Vector direction;
    Vector probe;

    void resize(std::size_t d) {
        direction.resize(d);
        probe.resize(d);
    }
};

/// Writes the estimate into `out`. Directions come from `directions`, the shared
/// noise draw from `noise`. Returns the number of objective evaluations (K + 1).
template <NoisyObjective F>
std::size_t estimate_gradient_into(const F& f, std::span<const double> theta, const EstimatorConfig& cfg,
                                   RandomSource& directions, RandomSource& noise, std::span<double> out,
                                   EstimatorWorkspace& ws) {
    const std::size_t d = f.dim();
    require_same_dim(theta.size(), d, "estimate_gradient theta");
    require_same_dim(out.size(), d, "estimate_gradient output");
    cfg.validate();
    ws.resize(d);

    const double xi = f.draw_noise(noise);
    const double center = detail::checked_eval(f, theta, xi);

    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < cfg.k; ++k) {
        sample_sphere_into(ws.direction, directions);
        for (std::size_t i = 0; i < d; ++i) ws.probe[i] = theta[i] + cfg.mu * ws.direction[i];
        const double slope = (detail::checked_eval(f, ws.probe, xi) - center) / cfg.mu;
        for (std::size_t i = 0; i < d; ++i) out[i] += slope * ws.direction[i];
    }
    const double scale = static_cast<double>(d) / static_cast<double>(cfg.k);
    for (double& x : out) x *= scale;
    return cfg.k + 1;
}

template <NoisyObjective F>
GradientEstimate estimate_gradient(const F& f, std::span<const double> theta, const EstimatorConfig& cfg,
                                   RandomSource& directions, RandomSource& noise) {
    GradientEstimate est;
    est.components.resize(f.dim());
    EstimatorWorkspace ws;
    est.evaluations_used = estimate_gradient_into(f, theta, cfg, directions, noise, est.components, ws);
    return est;
}

/// Single-source convenience overload: directions and noise share one stream.
template <NoisyObjective F>
GradientEstimate estimate_gradient(const F& f, std::span<const double> theta, const EstimatorConfig& cfg,
                                   RandomSource& rng) {
    return estimate_gradient(f, theta, cfg, rng, rng);
}

/// Estimate along caller-supplied directions (each of length d) with a fixed noise draw.
template <NoisyObjective F>
GradientEstimate estimate_gradient_along(const F& f, std::span<const double> theta, double mu,
                                         std::span<const Vector> directions, double xi = 0.0) {
    const std::size_t d = f.dim();
    require_same_dim(theta.size(), d, "estimate_gradient_along theta");
    if (directions.empty()) throw ArgumentError("estimate_gradient_along: need at least one direction");
    EstimatorConfig{mu, directions.size()}.validate();

    GradientEstimate est;
    est.components.assign(d, 0.0);
    const double center = detail::checked_eval(f, theta, xi);
    Vector probe(d);
    for (const Vector& u : directions) {
        require_same_dim(u.size(), d, "estimate_gradient_along direction");
        for (std::size_t i = 0; i < d; ++i) probe[i] = theta[i] + mu * u[i];
        const double slope = (detail::checked_eval(f, probe, xi) - center) / mu;
        for (std::size_t i = 0; i < d; ++i) est.components[i] += slope * u[i];
    }
    const double scale = static_cast<double>(d) / static_cast<double>(directions.size());
    for (double& x : est.components) x *= scale;
    est.evaluations_used = directions.size() + 1;
    return est;
}

} // namespace zo
