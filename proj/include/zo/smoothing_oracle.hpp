// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo oracles for the ball-smoothed objective
//   F_mu(theta) = E_{u ~ Unif(B^d)} [ F(theta + mu*u) ]
// and its gradient E[ grad F(theta + mu*u) ].
//
// These read true values and gradients, so they are test and diagnostics
// support only. Nothing on the optimization path includes this header.

#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>

#include "zo/errors.hpp"
#include "zo/sampler.hpp"
#include "zo/vector_ops.hpp"

namespace zo {

template <typename F>
concept SmoothObjective = requires(const F& f, std::span<const double> theta, std::span<double> out) {
    { f.dim() } -> std::convertible_to<std::size_t>;
    { f.value(theta) } -> std::convertible_to<double>;
    f.gradient_into(theta, out);
};

struct MonteCarloValue {
    double mean = 0.0;
    double std_error = 0.0;
};

struct MonteCarloVector {
    Vector mean;
    Vector std_error;
};

namespace detail {

inline void check_oracle_args(std::size_t theta_size, std::size_t d, double mu, std::size_t n_samples) {
    require_same_dim(theta_size, d, "smoothing oracle theta");
    if (n_samples == 0) throw ArgumentError("smoothing oracle: n_samples must be >= 1");
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw ArgumentError("smoothing oracle: mu must be finite and >= 0");
}

} // namespace detail

template <SmoothObjective F>
MonteCarloValue smoothed_value(const F& f, std::span<const double> theta, double mu, std::size_t n_samples,
                               RandomSource& rng) {
    const std::size_t d = f.dim();
    detail::check_oracle_args(theta.size(), d, mu, n_samples);
    Vector u(d), probe(d);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        sample_ball_into(u, rng);
        for (std::size_t i = 0; i < d; ++i) probe[i] = theta[i] + mu * u[i];
        const double v = f.value(probe);
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = n > 1.0 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n)};
}

template <SmoothObjective F>
MonteCarloVector smoothed_gradient_oracle_with_error(const F& f, std::span<const double> theta, double mu,
                                                     std::size_t n_samples, RandomSource& rng) {
    const std::size_t d = f.dim();
    detail::check_oracle_args(theta.size(), d, mu, n_samples);
    Vector u(d), probe(d), grad(d), sum(d, 0.0), sum_sq(d, 0.0);
    for (std::size_t s = 0; s < n_samples; ++s) {
        sample_ball_into(u, rng);
        for (std::size_t i = 0; i < d; ++i) probe[i] = theta[i] + mu * u[i];
        f.gradient_into(probe, grad);
        for (std::size_t i = 0; i < d; ++i) {
            sum[i] += grad[i];
            sum_sq[i] += grad[i] * grad[i];
        }
    }
    const double n = static_cast<double>(n_samples);
    MonteCarloVector out{Vector(d), Vector(d)};
    for (std::size_t i = 0; i < d; ++i) {
        out.mean[i] = sum[i] / n;
        const double var = n > 1.0 ? std::max(0.0, (sum_sq[i] - n * out.mean[i] * out.mean[i]) / (n - 1.0)) : 0.0;
        out.std_error[i] = std::sqrt(var / n);
    }
    return out;
}

template <SmoothObjective F>
Vector smoothed_gradient_oracle(const F& f, std::span<const double> theta, double mu, std::size_t n_samples,
                                RandomSource& rng) {
    return smoothed_gradient_oracle_with_error(f, theta, mu, n_samples, rng).mean;
}

} // namespace zo
