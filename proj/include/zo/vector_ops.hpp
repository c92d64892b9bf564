// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "zo/errors.hpp"

namespace zo {

/// Dense parameter vector. All arithmetic on it is elementwise.
using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    require_same_dim(b.size(), a.size(), "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double squared_norm(std::span<const double> a) {
    double acc = 0.0;
    for (double x : a) acc += x * x;
    return acc;
}

inline double norm(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

inline double distance(std::span<const double> a, std::span<const double> b) {
    require_same_dim(b.size(), a.size(), "distance");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

inline bool all_finite(std::span<const double> a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

/// sign(0) = 0.
inline double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

} // namespace zo
