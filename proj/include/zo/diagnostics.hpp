// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Moment-quality measurements: alignment of g_t and m_t with the true
// gradient, the error of both second-moment recursions against one driven by
// the squared true gradient, and the variance reduction of the first-moment
// EMA at a fixed point.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zo/errors.hpp"
#include "zo/estimator.hpp"
#include "zo/objectives.hpp"
#include "zo/optimizers.hpp"
#include "zo/run.hpp"
#include "zo/sampler.hpp"
#include "zo/trace.hpp"
#include "zo/vector_ops.hpp"

namespace zo {

/// <a,b> / (|a| |b|), clamped to [-1, 1]; 0 when either norm is below 1e-300.
inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    require_same_dim(b.size(), a.size(), "cosine_similarity");
    constexpr double kTiny = 1e-300;
    const double na = norm(a), nb = norm(b);
    if (na < kTiny || nb < kTiny) return 0.0;
    return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

/// |v_est - v_ref| / |v_ref| in Euclidean norm.
inline double relative_error(std::span<const double> v_est, std::span<const double> v_ref) {
    require_same_dim(v_est.size(), v_ref.size(), "relative_error");
    const double ref = norm(v_ref);
    if (ref == 0.0) throw UndefinedReferenceError("relative_error: reference vector is zero");
    return distance(v_est, v_ref) / ref;
}

/// Second-moment recursion driven by the squared true gradient.
class ReferenceSecondMoment {
public:
    ReferenceSecondMoment(double beta2, Vector v0) : beta2_(beta2), v_(std::move(v0)) {}

    void update(std::span<const double> true_grad) {
        require_same_dim(true_grad.size(), v_.size(), "ReferenceSecondMoment");
        for (std::size_t i = 0; i < v_.size(); ++i)
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * true_grad[i] * true_grad[i];
    }

    const Vector& value() const noexcept { return v_; }

private:
    double beta2_;
    Vector v_;
};

/// Burn-in length ceil(10 / (1 - beta1)); leaves beta1^n below 5e-5.
inline std::size_t min_burn_in(double beta1) {
    // The relative nudge absorbs rounding in 1 - beta1 (10 / (1 - 0.9) is 100.00000000000003).
    return static_cast<std::size_t>(std::ceil(10.0 / (1.0 - beta1) * (1.0 - 1e-12)));
}

struct VarianceRatio {
    double ratio = 0.0;
    double predicted = 0.0;
};

/// Runs m <- beta1*m + (1-beta1)*g on i.i.d. estimates at a fixed theta and
/// returns the coordinate-averaged Var(m_i)/Var(g_i) next to (1-beta1)/(1+beta1).
/// Requires n_burn >= min_burn_in(beta1) and n_measure >= 100.
template <NoisyObjective F>
VarianceRatio variance_reduction_ratio(const F& f, std::span<const double> theta, const EstimatorConfig& cfg,
                                       double beta1, std::size_t n_burn, std::size_t n_measure, RandomSource& rng) {
    const std::size_t d = f.dim();
    require_same_dim(theta.size(), d, "variance_reduction_ratio theta");
    if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ArgumentError("variance_reduction_ratio: beta1 must be in [0, 1)");
    if (n_measure < 100) throw ArgumentError("variance_reduction_ratio: n_measure must be >= 100");
    if (n_burn < min_burn_in(beta1))
        throw ArgumentError("variance_reduction_ratio: n_burn must be >= ceil(10 / (1 - beta1))");

    Vector g(d), m(d, 0.0);
    EstimatorWorkspace ws;
    auto advance = [&] {
        estimate_gradient_into(f, theta, cfg, rng, rng, g, ws);
        for (std::size_t i = 0; i < d; ++i) m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    };
    for (std::size_t s = 0; s < n_burn; ++s) advance();

    // Welford accumulators per coordinate.
    Vector mean_g(d, 0.0), m2_g(d, 0.0), mean_m(d, 0.0), m2_m(d, 0.0);
    for (std::size_t s = 1; s <= n_measure; ++s) {
        advance();
        const double n = static_cast<double>(s);
        for (std::size_t i = 0; i < d; ++i) {
            const double dg = g[i] - mean_g[i];
            mean_g[i] += dg / n;
            m2_g[i] += dg * (g[i] - mean_g[i]);
            const double dm = m[i] - mean_m[i];
            mean_m[i] += dm / n;
            m2_m[i] += dm * (m[i] - mean_m[i]);
        }
    }

    double ratio_sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < d; ++i) {
        if (m2_g[i] > 0.0) {
            ratio_sum += m2_m[i] / m2_g[i];
            ++counted;
        }
    }
    if (counted == 0) throw DomainError("variance_reduction_ratio: estimator has zero variance at theta");
    return {ratio_sum / static_cast<double>(counted), (1.0 - beta1) / (1.0 + beta1)};
}

/// Step observer that tracks shadow second moments fed by g_t and m_t and a
/// reference fed by the squared true gradient at theta_{t-1}. It only reads
/// the optimizer state, so the trajectory is the same as an uninstrumented run.
class MomentObserver {
public:
    MomentObserver(const ObjectiveSpec& spec, OptimizerKind kind, const HyperParams& hp, double v0)
        : spec_(spec),
          kind_(kind),
          beta2_(hp.beta2),
          v_ori_(spec.dim(), v0),
          v_ours_(spec.dim(), v0),
          reference_(hp.beta2, Vector(spec.dim(), v0)),
          grad_(spec.dim()) {}

    std::optional<MomentDiagnostics> operator()(std::uint64_t, std::span<const double> prev,
                                                std::span<const double> g, const OptimizerState& st) {
        spec_.gradient_into(prev, grad_);
        reference_.update(grad_);

        MomentDiagnostics diag;
        diag.cos_g = cosine_similarity(g, grad_);
        const bool has_m = uses_first_moment(kind_);
        if (has_m) diag.cos_m = cosine_similarity(st.m, grad_);

        if (uses_second_moment(kind_)) {
            for (std::size_t i = 0; i < v_ori_.size(); ++i) {
                v_ori_[i] = beta2_ * v_ori_[i] + (1.0 - beta2_) * g[i] * g[i];
                if (has_m) v_ours_[i] = beta2_ * v_ours_[i] + (1.0 - beta2_) * st.m[i] * st.m[i];
            }
            if (norm(reference_.value()) > 0.0) {
                diag.relerr_v_ori = relative_error(v_ori_, reference_.value());
                if (has_m) diag.relerr_v_ours = relative_error(v_ours_, reference_.value());
            }
        }
        return diag;
    }

private:
    const ObjectiveSpec& spec_;
    OptimizerKind kind_;
    double beta2_;
    Vector v_ori_;
    Vector v_ours_;
    ReferenceSecondMoment reference_;
    Vector grad_;
};

/// Same trajectory as run(), with MomentDiagnostics attached to every record after iteration 0.
inline std::vector<TraceRecord> instrumented_run(OptimizerKind kind, const ObjectiveSpec& spec,
                                                 const EstimatorConfig& cfg, const HyperParams& hp,
                                                 std::span<const double> theta0, std::uint64_t iters,
                                                 std::uint64_t seed, const RunOptions& opts = {}) {
    MomentObserver observer(spec, kind, hp, opts.v0);
    return run_observed(kind, spec, cfg, hp, theta0, iters, seed, opts, observer);
}

} // namespace zo
