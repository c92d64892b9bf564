// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic benchmark objectives (Quadratic, Cubic, Levy, Rosenbrock), each
// with an analytic gradient and a global minimum value of zero, plus an
// optional bounded additive noise model f(theta; xi) = F(theta) + xi.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "zo/errors.hpp"
#include "zo/sampler.hpp"
#include "zo/vector_ops.hpp"

namespace zo {

enum class ObjectiveKind { Quadratic, Cubic, Levy, Rosenbrock };

inline constexpr ObjectiveKind kAllObjectiveKinds[] = {ObjectiveKind::Quadratic, ObjectiveKind::Cubic,
                                                       ObjectiveKind::Levy, ObjectiveKind::Rosenbrock};

inline std::string_view to_string(ObjectiveKind kind) {
    switch (kind) {
    case ObjectiveKind::Quadratic: return "quadratic";
    case ObjectiveKind::Cubic: return "cubic";
    case ObjectiveKind::Levy: return "levy";
    case ObjectiveKind::Rosenbrock: return "rosenbrock";
    }
    return "?";
}

inline std::optional<ObjectiveKind> parse_objective_kind(std::string_view token) {
    for (ObjectiveKind k : kAllObjectiveKinds)
        if (to_string(k) == token) return k;
    return std::nullopt;
}

/// Additive noise. AdditiveUniform draws xi ~ U[-sigma*sqrt(3), sigma*sqrt(3)], so Var(xi) = sigma^2.
struct NoiseModel {
    enum class Kind { None, AdditiveUniform };

    Kind kind = Kind::None;
    double sigma = 0.0;

    static NoiseModel none() { return {}; }
    static NoiseModel additive_uniform(double sigma) {
        if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("noise sigma must be finite and >= 0");
        return {Kind::AdditiveUniform, sigma};
    }

    /// Draws xi. Consumes one draw for AdditiveUniform, none otherwise.
    double draw(RandomSource& rng) const {
        if (kind == Kind::None) return 0.0;
        const double half_width = sigma * std::numbers::sqrt3;
        return rng.uniform(-half_width, half_width);
    }
};

namespace detail {

inline double levy_w(double theta) { return 1.0 + (theta - 1.0) / 4.0; }

inline void check_theta(std::span<const double> theta, std::size_t d) {
    require_same_dim(theta.size(), d, "objective");
}

[[noreturn]] inline void throw_non_finite_theta() {
    throw DomainError("objective: non-finite parameter component");
}

} // namespace detail

/// Immutable description of one benchmark objective. Freely shareable.
class ObjectiveSpec {
public:
    ObjectiveSpec(ObjectiveKind kind, std::size_t dim, NoiseModel noise = {})
        : kind_(kind), dim_(dim), noise_(noise) {
        if (dim == 0) throw DimensionError("objective dimension must be at least 1");
    }

    ObjectiveKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    const NoiseModel& noise() const noexcept { return noise_; }

    static constexpr double optimum_value() noexcept { return 0.0; }

    /// Global minimizer: zeros for Quadratic/Cubic, ones for Levy/Rosenbrock.
    Vector minimizer() const {
        const bool ones = kind_ == ObjectiveKind::Levy || kind_ == ObjectiveKind::Rosenbrock;
        return Vector(dim_, ones ? 1.0 : 0.0);
    }

    /// Default starting point: all threes for Levy, all twos otherwise.
    Vector default_theta0() const { return Vector(dim_, kind_ == ObjectiveKind::Levy ? 3.0 : 2.0); }

    /// Noise-free F(theta).
    double value(std::span<const double> theta) const {
        detail::check_theta(theta, dim_);
        const std::size_t d = dim_;
        double f = 0.0;
        bool finite = true;
        switch (kind_) {
        case ObjectiveKind::Quadratic:
            for (double x : theta) {
                finite &= std::isfinite(x);
                f += x * x;
            }
            f *= 0.5;
            break;
        case ObjectiveKind::Cubic:
            for (double x : theta) {
                finite &= std::isfinite(x);
                const double a = std::abs(x);
                f += a * a * a + 0.5 * x * x;
            }
            break;
        case ObjectiveKind::Levy: {
            using std::numbers::pi;
            for (double x : theta) finite &= std::isfinite(x);
            const double w1 = detail::levy_w(theta[0]);
            const double s1 = std::sin(pi * w1);
            f = s1 * s1;
            for (std::size_t i = 1; i + 1 < d; ++i) {
                const double w = detail::levy_w(theta[i]);
                const double s = std::sin(pi * w + 1.0);
                f += (w - 1.0) * (w - 1.0) * (1.0 + 10.0 * s * s);
            }
            const double wd = detail::levy_w(theta[d - 1]);
            const double sd = std::sin(2.0 * pi * wd);
            f += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
            break;
        }
        case ObjectiveKind::Rosenbrock:
            for (std::size_t i = 0; i < d; ++i) {
                const double x = theta[i];
                finite &= std::isfinite(x);
                if (i + 1 < d) {
                    const double a = theta[i + 1] - x * x;
                    const double b = 1.0 - x;
                    f += 100.0 * a * a + b * b;
                }
            }
            break;
        }
        if (!finite) detail::throw_non_finite_theta();
        return f;
    }

    /// Analytic gradient of F. For Cubic this is the subgradient with sign(0) = 0.
    Vector gradient(std::span<const double> theta) const {
        Vector g(dim_);
        gradient_into(theta, g);
        return g;
    }

    void gradient_into(std::span<const double> theta, std::span<double> out) const {
        detail::check_theta(theta, dim_);
        require_same_dim(out.size(), dim_, "gradient output");
        const std::size_t d = dim_;
        switch (kind_) {
        case ObjectiveKind::Quadratic:
            std::copy(theta.begin(), theta.end(), out.begin());
            break;
        case ObjectiveKind::Cubic:
            for (std::size_t i = 0; i < d; ++i) {
                const double x = theta[i];
                out[i] = 3.0 * x * x * sign(x) + x;
            }
            break;
        case ObjectiveKind::Levy: {
            using std::numbers::pi;
            // dw/dtheta = 1/4
            std::fill(out.begin(), out.end(), 0.0);
            const double w1 = detail::levy_w(theta[0]);
            out[0] += pi * std::sin(2.0 * pi * w1);
            for (std::size_t i = 1; i + 1 < d; ++i) {
                const double w = detail::levy_w(theta[i]);
                const double s = std::sin(pi * w + 1.0);
                out[i] += 2.0 * (w - 1.0) * (1.0 + 10.0 * s * s) +
                          (w - 1.0) * (w - 1.0) * 10.0 * pi * std::sin(2.0 * (pi * w + 1.0));
            }
            const double wd = detail::levy_w(theta[d - 1]);
            const double sd = std::sin(2.0 * pi * wd);
            out[d - 1] += 2.0 * (wd - 1.0) * (1.0 + sd * sd) +
                          (wd - 1.0) * (wd - 1.0) * 2.0 * pi * std::sin(4.0 * pi * wd);
            for (double& g : out) g *= 0.25;
            break;
        }
        case ObjectiveKind::Rosenbrock:
            std::fill(out.begin(), out.end(), 0.0);
            for (std::size_t i = 0; i + 1 < d; ++i) {
                const double x = theta[i];
                const double a = theta[i + 1] - x * x;
                out[i] += -400.0 * x * a - 2.0 * (1.0 - x);
                out[i + 1] += 200.0 * a;
            }
            break;
        }
    }

    double draw_noise(RandomSource& rng) const { return noise_.draw(rng); }

    /// f(theta; xi) for an already drawn noise realization.
    double noisy_value(std::span<const double> theta, double xi) const { return value(theta) + xi; }

    /// F(theta) - min F, clamped at zero.
    double optimality_gap(std::span<const double> theta) const {
        return std::max(0.0, value(theta) - optimum_value());
    }

private:
    ObjectiveKind kind_;
    std::size_t dim_;
    NoiseModel noise_;
};

/// f(theta; xi) with xi drawn from `rng`.
inline double eval(const ObjectiveSpec& spec, std::span<const double> theta, RandomSource& rng) {
    return spec.noisy_value(theta, spec.draw_noise(rng));
}

inline Vector true_gradient(const ObjectiveSpec& spec, std::span<const double> theta) {
    return spec.gradient(theta);
}

inline double optimality_gap(const ObjectiveSpec& spec, std::span<const double> theta) {
    return spec.optimality_gap(theta);
}

} // namespace zo
