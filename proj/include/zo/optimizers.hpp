// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Update rules behind one stepping interface:
//
//   zo-sgd      theta -= eta * g
//   zo-signsgd  theta -= eta * sign(g)
//   zo-rmsprop  v = b2*v + (1-b2)*g^2;                    theta -= eta * g / sqrt(v + zeta)
//   zo-adamm    m = b1*m + (1-b1)*g; v = b2*v + (1-b2)*g^2; theta -= eta * m / sqrt(v + zeta)
//   r-adazo     m = b1*m + (1-b1)*g; v = b2*v + (1-b2)*m^2; theta -= eta * m / sqrt(v + zeta)
//
// r-adazo feeds the second moment with the already variance-reduced first
// moment instead of the raw estimate. None of the rules applies Adam-style
// bias correction: dividing by (1 - b^t) would undo the variance reduction
// the first moment provides.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "zo/errors.hpp"
#include "zo/vector_ops.hpp"

namespace zo {

enum class OptimizerKind { ZoSgd, ZoSignSgd, ZoRmsProp, ZoAdaMM, RAdaZO };

inline constexpr OptimizerKind kAllOptimizerKinds[] = {OptimizerKind::ZoSgd, OptimizerKind::ZoSignSgd,
                                                       OptimizerKind::ZoRmsProp, OptimizerKind::ZoAdaMM,
                                                       OptimizerKind::RAdaZO};

inline std::string_view to_string(OptimizerKind kind) {
    switch (kind) {
    case OptimizerKind::ZoSgd: return "zo-sgd";
    case OptimizerKind::ZoSignSgd: return "zo-signsgd";
    case OptimizerKind::ZoRmsProp: return "zo-rmsprop";
    case OptimizerKind::ZoAdaMM: return "zo-adamm";
    case OptimizerKind::RAdaZO: return "r-adazo";
    }
    return "?";
}

inline std::optional<OptimizerKind> parse_optimizer_kind(std::string_view token) {
    for (OptimizerKind k : kAllOptimizerKinds)
        if (to_string(k) == token) return k;
    return std::nullopt;
}

constexpr bool uses_first_moment(OptimizerKind kind) noexcept {
    return kind == OptimizerKind::ZoAdaMM || kind == OptimizerKind::RAdaZO;
}

constexpr bool uses_second_moment(OptimizerKind kind) noexcept {
    return kind == OptimizerKind::ZoRmsProp || uses_first_moment(kind);
}

struct HyperParams {
    double beta1 = 0.9;
    double beta2 = 0.99;
    double eta = 0.001;
    double zeta = 1e-8;

    void validate() const {
        if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ArgumentError("beta1 must be in [0, 1)");
        if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ArgumentError("beta2 must be in [0, 1)");
        if (!(eta > 0.0) || !std::isfinite(eta)) throw ArgumentError("eta must be finite and > 0");
        if (!(zeta >= 0.0) || !std::isfinite(zeta)) throw ArgumentError("zeta must be finite and >= 0");
    }
};

struct OptimizerState {
    OptimizerKind kind = OptimizerKind::RAdaZO;
    Vector m;
    Vector v;
    std::uint64_t t = 0;
    HyperParams hp;

    std::size_t dim() const noexcept { return m.size(); }
};

/// State at t = 0 with the given moment vectors. Throws on a negative v0 entry.
inline OptimizerState new_state(OptimizerKind kind, std::size_t d, const HyperParams& hp, Vector m0, Vector v0) {
    if (d == 0) throw DimensionError("optimizer dimension must be at least 1");
    hp.validate();
    require_same_dim(m0.size(), d, "new_state m0");
    require_same_dim(v0.size(), d, "new_state v0");
    for (double x : m0)
        if (!std::isfinite(x)) throw ArgumentError("new_state: m0 entries must be finite");
    for (double x : v0)
        if (!(x >= 0.0) || !std::isfinite(x)) throw ArgumentError("new_state: v0 entries must be finite and >= 0");
    return OptimizerState{kind, std::move(m0), std::move(v0), 0, hp};
}

/// Zero-initialized moments.
inline OptimizerState new_state(OptimizerKind kind, std::size_t d, const HyperParams& hp) {
    return new_state(kind, d, hp, Vector(d, 0.0), Vector(d, 0.0));
}

/// Advances `state` by one iteration and updates `theta` in place. A zero
/// numerator leaves the coordinate unchanged even when v + zeta is zero.
inline void step_in_place(OptimizerState& state, std::span<double> theta, std::span<const double> g) {
    const std::size_t d = state.dim();
    require_same_dim(theta.size(), d, "step theta");
    require_same_dim(g.size(), d, "step gradient");
    if (!all_finite(g)) throw EvaluationError("step: non-finite gradient estimate", Vector(theta.begin(), theta.end()));

    const auto& hp = state.hp;
    const double b1 = hp.beta1, b2 = hp.beta2;
    auto& m = state.m;
    auto& v = state.v;

    switch (state.kind) {
    case OptimizerKind::ZoSgd:
        for (std::size_t i = 0; i < d; ++i) theta[i] -= hp.eta * g[i];
        break;
    case OptimizerKind::ZoSignSgd:
        for (std::size_t i = 0; i < d; ++i) theta[i] -= hp.eta * sign(g[i]);
        break;
    case OptimizerKind::ZoRmsProp:
        for (std::size_t i = 0; i < d; ++i) {
            v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
            if (g[i] != 0.0) theta[i] -= hp.eta * g[i] / std::sqrt(v[i] + hp.zeta);
        }
        break;
    case OptimizerKind::ZoAdaMM:
        for (std::size_t i = 0; i < d; ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
            if (m[i] != 0.0) theta[i] -= hp.eta * m[i] / std::sqrt(v[i] + hp.zeta);
        }
        break;
    case OptimizerKind::RAdaZO:
        for (std::size_t i = 0; i < d; ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * m[i] * m[i];
            if (m[i] != 0.0) theta[i] -= hp.eta * m[i] / std::sqrt(v[i] + hp.zeta);
        }
        break;
    }
    ++state.t;
}

/// Returns the updated parameters; `theta` is left untouched.
inline Vector step(OptimizerState& state, std::span<const double> theta, std::span<const double> g) {
    Vector next(theta.begin(), theta.end());
    step_in_place(state, next, g);
    return next;
}

} // namespace zo
