// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Seeded sampling of directions on the unit sphere and in the unit ball.
//
// Every random quantity in the library is derived from std::mt19937_64, whose
// output sequence is fixed by the C++ standard, so traces are reproducible
// across compilers and platforms. Standard-library distributions are avoided
// for the same reason: their algorithms are implementation-defined.
//
// Draw accounting (64-bit outputs consumed per call):
//   uniform_open01      1
//   sample_sphere(d)    2 * ceil(d / 2)   (Box-Muller pairs, odd tail discarded)
//   sample_ball(d)      2 * ceil(d / 2) + 1
// A sphere draw is resampled if it comes out as the zero vector. Box-Muller
// on the open grid used here cannot produce a zero radius, so in practice the
// counts above are exact.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string_view>

#include "zo/errors.hpp"
#include "zo/vector_ops.hpp"

namespace zo {

/// Name recorded in trace headers.
inline constexpr std::string_view kPrngName = "mt19937_64/splitmix64-streams";

/// SplitMix64 finalizer, used to derive independent sub-stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Sub-stream identifiers used by a single experiment run.
enum class Stream : std::uint64_t {
    Directions = 1,
    Noise = 2,
    Diagnostics = 3,
};

/// Seed of sub-stream `stream` of base seed `base`: splitmix64(base ^ splitmix64(stream)).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    return splitmix64(base ^ splitmix64(stream));
}

/// Single-owner deterministic random source.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    RandomSource(std::uint64_t base_seed, Stream stream)
        : RandomSource(derive_seed(base_seed, static_cast<std::uint64_t>(stream))) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Number of 64-bit outputs consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    /// Uniform on the open interval (0, 1), 53-bit grid.
    double uniform_open01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_open01(); }

    /// Fills `out` with i.i.d. standard normals (Box-Muller, two draws per pair).
    void fill_normal(std::span<double> out) {
        std::size_t i = 0;
        while (i < out.size()) {
            const double r = std::sqrt(-2.0 * std::log(uniform_open01()));
            const double angle = 2.0 * std::numbers::pi * uniform_open01();
            out[i++] = r * std::cos(angle);
            if (i < out.size()) out[i++] = r * std::sin(angle);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

inline void check_sample_dim(std::size_t d) {
    if (d == 0) throw DimensionError("direction dimension must be at least 1");
}

/// Writes a uniform sample from the unit sphere S^{d-1} into `out` (d = out.size()).
inline void sample_sphere_into(std::span<double> out, RandomSource& rng) {
    check_sample_dim(out.size());
    for (;;) {
        rng.fill_normal(out);
        const double n = norm(out);
        if (n > 0.0) {
            for (double& x : out) x /= n;
            return;
        }
    }
}

inline Vector sample_sphere(std::size_t d, RandomSource& rng) {
    check_sample_dim(d);
    Vector u(d);
    sample_sphere_into(u, rng);
    return u;
}

/// Uniform sample from the unit ball: a sphere sample scaled by U^(1/d).
inline void sample_ball_into(std::span<double> out, RandomSource& rng) {
    sample_sphere_into(out, rng);
    const double radius = std::pow(rng.uniform_open01(), 1.0 / static_cast<double>(out.size()));
    for (double& x : out) x *= radius;
}

inline Vector sample_ball(std::size_t d, RandomSource& rng) {
    check_sample_dim(d);
    Vector u(d);
    sample_ball_into(u, rng);
    return u;
}

} // namespace zo
