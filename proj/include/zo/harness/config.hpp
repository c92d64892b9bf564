// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: defaults, command-line and key=value file
// parsing, validation, and the flat key/value form written to trace headers.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "zo/errors.hpp"
#include "zo/estimator.hpp"
#include "zo/objectives.hpp"
#include "zo/optimizers.hpp"

namespace zo::harness {

inline constexpr std::string_view kVersion = "1.0.0";

struct ExperimentConfig {
    ObjectiveKind function = ObjectiveKind::Quadratic;
    std::size_t dim = 1000;
    std::vector<OptimizerKind> optimizers{std::begin(kAllOptimizerKinds), std::end(kAllOptimizerKinds)};
    HyperParams hp{0.9, 0.99, 0.001, 1e-8};
    EstimatorConfig estimator{0.005, 10};
    std::uint64_t iters = 10000;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    /// Constant fill for theta0; nullopt selects the objective's default start.
    std::optional<double> theta0;
    double v0 = 0.0;
    double sigma = 0.0;
    bool diagnostics = false;
    std::string out = "zo-out";
    /// Worker threads; 0 = hardware concurrency. Does not affect results.
    unsigned jobs = 0;

    ObjectiveSpec objective() const {
        return ObjectiveSpec(function, dim, sigma > 0.0 ? NoiseModel::additive_uniform(sigma) : NoiseModel::none());
    }

    Vector initial_theta() const { return theta0 ? Vector(dim, *theta0) : objective().default_theta0(); }
};

/// Shortest decimal that round-trips to the same double.
inline std::string format_shortest(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace detail {

[[noreturn]] inline void usage(const std::string& field, const std::string& why) {
    throw UsageError(field + ": " + why);
}

template <typename T>
std::string join(const std::vector<T>& values, auto&& fmt) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += fmt(values[i]);
    }
    return s;
}

} // namespace detail

/// Throws UsageError naming the first offending field.
inline void validate(const ExperimentConfig& c) {
    using detail::usage;
    if (c.dim < 1) usage("dim", "must be >= 1");
    if (c.optimizers.empty()) usage("optimizer", "at least one optimizer is required");
    if (std::set<OptimizerKind>(c.optimizers.begin(), c.optimizers.end()).size() != c.optimizers.size())
        usage("optimizer", "duplicate optimizer");
    if (!(c.hp.beta1 >= 0.0 && c.hp.beta1 < 1.0)) usage("beta1", "must be in [0, 1)");
    if (!(c.hp.beta2 >= 0.0 && c.hp.beta2 < 1.0)) usage("beta2", "must be in [0, 1)");
    if (!(c.hp.eta > 0.0) || !std::isfinite(c.hp.eta)) usage("lr", "must be finite and > 0");
    if (!(c.hp.zeta >= 0.0) || !std::isfinite(c.hp.zeta)) usage("zeta", "must be finite and >= 0");
    if (!(c.estimator.mu > 0.0) || !std::isfinite(c.estimator.mu)) usage("mu", "must be finite and > 0");
    if (c.estimator.k < 1) usage("k", "must be >= 1");
    if (c.seeds.empty()) usage("seed", "at least one seed is required");
    if (std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size())
        usage("seed", "seeds must be distinct");
    if (c.theta0 && !std::isfinite(*c.theta0)) usage("theta0", "must be finite");
    if (!(c.v0 >= 0.0) || !std::isfinite(c.v0)) usage("v0", "must be finite and >= 0");
    if (!(c.sigma >= 0.0) || !std::isfinite(c.sigma)) usage("sigma", "must be finite and >= 0");
}

/// String-typed landing slots for options that need conversion after parsing.
struct ConfigTokens {
    std::string function = "quadratic";
    std::vector<std::string> optimizers;
    std::string theta0 = "default";
};

/// Registers the experiment flags on `app`. Call finalize_config after parsing.
inline void add_experiment_options(CLI::App& app, ExperimentConfig& cfg, ConfigTokens& tokens) {
    app.set_config("--config", "", "Flat key=value file mirroring the flags; flags override it");
    app.add_option("--function", tokens.function, "quadratic|cubic|levy|rosenbrock")->capture_default_str();
    app.add_option("--optimizer", tokens.optimizers, "zo-sgd|zo-signsgd|zo-rmsprop|zo-adamm|r-adazo (repeatable)")
        ->delimiter(',');
    app.add_option("--dim", cfg.dim, "Problem dimension")->capture_default_str();
    app.add_option("--iters", cfg.iters, "Iterations T")->capture_default_str();
    app.add_option("--seed", cfg.seeds, "Run seed (repeatable)")->delimiter(',')->capture_default_str();
    app.add_option("--beta1", cfg.hp.beta1, "First-moment decay")->capture_default_str();
    app.add_option("--beta2", cfg.hp.beta2, "Second-moment decay")->capture_default_str();
    app.add_option("--lr", cfg.hp.eta, "Learning rate")->capture_default_str();
    app.add_option("--zeta", cfg.hp.zeta, "Stability constant inside the square root")->capture_default_str();
    app.add_option("--mu", cfg.estimator.mu, "Smoothing radius")->capture_default_str();
    app.add_option("--k", cfg.estimator.k, "Directions per gradient estimate")->capture_default_str();
    app.add_option("--sigma", cfg.sigma, "Std. dev. of bounded additive noise (0 = none)")->capture_default_str();
    app.add_option("--theta0", tokens.theta0, "Constant initial value, or 'default'")->capture_default_str();
    app.add_option("--v0", cfg.v0, "Initial second-moment fill")->capture_default_str();
    app.add_flag("--diagnostics", cfg.diagnostics, "Record moment diagnostics columns");
    app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)")->capture_default_str();
}

inline void finalize_config(ExperimentConfig& cfg, const ConfigTokens& tokens) {
    auto fn = parse_objective_kind(tokens.function);
    if (!fn) detail::usage("function", "unknown function '" + tokens.function + "'");
    cfg.function = *fn;

    if (!tokens.optimizers.empty()) {
        cfg.optimizers.clear();
        for (const auto& tok : tokens.optimizers) {
            auto kind = parse_optimizer_kind(tok);
            if (!kind) detail::usage("optimizer", "unknown optimizer '" + tok + "'");
            cfg.optimizers.push_back(*kind);
        }
    }

    if (tokens.theta0 == "default") {
        cfg.theta0.reset();
    } else {
        double value = 0.0;
        const char* first = tokens.theta0.data();
        const char* last = first + tokens.theta0.size();
        auto res = std::from_chars(first, last, value);
        if (res.ec != std::errc{} || res.ptr != last) detail::usage("theta0", "expected a number or 'default'");
        cfg.theta0 = value;
    }
    validate(cfg);
}

/// Parses experiment flags (program name and subcommand already stripped).
inline ExperimentConfig parse_config(std::vector<std::string> args) {
    ExperimentConfig cfg;
    ConfigTokens tokens;
    CLI::App app{"zo-bench run"};
    add_experiment_options(app, cfg, tokens);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    finalize_config(cfg, tokens);
    return cfg;
}

/// Resolved configuration as ordered key/value pairs (same keys as the flags).
/// Output location and thread count are omitted: they never change results.
inline std::vector<std::pair<std::string, std::string>> to_key_values(const ExperimentConfig& c) {
    return {
        {"function", std::string(to_string(c.function))},
        {"dim", std::to_string(c.dim)},
        {"optimizer", detail::join(c.optimizers, [](OptimizerKind k) { return std::string(to_string(k)); })},
        {"iters", std::to_string(c.iters)},
        {"seed", detail::join(c.seeds, [](std::uint64_t s) { return std::to_string(s); })},
        {"beta1", format_shortest(c.hp.beta1)},
        {"beta2", format_shortest(c.hp.beta2)},
        {"lr", format_shortest(c.hp.eta)},
        {"zeta", format_shortest(c.hp.zeta)},
        {"mu", format_shortest(c.estimator.mu)},
        {"k", std::to_string(c.estimator.k)},
        {"sigma", format_shortest(c.sigma)},
        {"theta0", c.theta0 ? format_shortest(*c.theta0) : std::string("default")},
        {"v0", format_shortest(c.v0)},
        {"diagnostics", c.diagnostics ? "true" : "false"},
    };
}

} // namespace zo::harness
