// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "probes.hpp"
#include "zo/harness/execute.hpp"
#include "zo/harness/trace_io.hpp"
#include "zo/smoothing_oracle.hpp"
#include "zo/zo.hpp"

namespace {

using namespace zo;
using harness::ExperimentConfig;
using testing::CoordinateMoments;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects sub-check outcomes and detail text for one criterion.
struct Report {
    bool ok = true;
    std::ostringstream detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "  FAILED: " << what << '\n';
        }
    }
};

// 1. Convergence comparison on the four synthetic functions.
void convergence_comparison(Report& r) {
    const auto start = Clock::now();
    int wins = 0;
    for (ObjectiveKind fn : kAllObjectiveKinds) {
        ExperimentConfig cfg;
        cfg.function = fn;
        const auto result = harness::execute(cfg, false);
        const double ours = result.summary.find(OptimizerKind::RAdaZO)->final_gap_median;
        const double adamm = result.summary.find(OptimizerKind::ZoAdaMM)->final_gap_median;
        const double rms = result.summary.find(OptimizerKind::ZoRmsProp)->final_gap_median;
        const bool win = ours <= 0.5 * adamm;
        wins += win;
        const double spread = std::max(adamm, rms) / std::min(adamm, rms);
        r.detail << "  " << to_string(fn) << ": r-adazo " << ours << ", zo-adamm " << adamm << ", zo-rmsprop " << rms
                 << (win ? "  (r-adazo <= half)" : "  (r-adazo > half)") << '\n';
        r.check(spread <= 2.0, std::string(to_string(fn)) + ": zo-adamm and zo-rmsprop differ by more than 2x");
    }
    const double elapsed = seconds_since(start);
    r.detail << "  functions where r-adazo <= half of zo-adamm: " << wins << "/4; runtime " << elapsed << " s\n";
    r.check(wins >= 3, "r-adazo at most half of zo-adamm on at least 3 of 4 functions");
    r.check(elapsed < 600.0, "runtime under 10 minutes");
}

// 2. Variance factor of the first-moment EMA at a fixed point.
void variance_factor(Report& r) {
    const auto start = Clock::now();
    const ObjectiveSpec spec(ObjectiveKind::Quadratic, 100);
    const Vector theta(100, 1.0);
    const EstimatorConfig cfg{0.005, 1};
    for (double beta1 : {0.0, 0.5, 0.9}) {
        RandomSource rng(2, Stream::Diagnostics);
        const auto vr = variance_reduction_ratio(spec, theta, cfg, beta1, min_burn_in(beta1), 5000, rng);
        r.detail << "  beta1=" << beta1 << ": measured " << vr.ratio << ", predicted " << vr.predicted << '\n';
        if (beta1 == 0.0)
            r.check(vr.ratio == 1.0, "beta1=0 ratio is exactly 1");
        else
            r.check(std::abs(vr.ratio / vr.predicted - 1.0) <= 0.2, "ratio within 20% of (1-b)/(1+b)");
    }
    const double elapsed = seconds_since(start);
    r.detail << "  runtime " << elapsed << " s\n";
    r.check(elapsed < 60.0, "runtime under 1 minute");
}

// 3. Unbiasedness with respect to the smoothed gradient.
void unbiasedness(Report& r) {
    const auto start = Clock::now();
    {
        // The smoothed quadratic has gradient theta, so the estimator mean must be theta.
        const ObjectiveSpec spec(ObjectiveKind::Quadratic, 10);
        const Vector theta(10, 1.0);
        RandomSource rng(31);
        CoordinateMoments mom(10);
        for (int s = 0; s < 100000; ++s)
            mom.add(estimate_gradient(spec, theta, EstimatorConfig{0.005, 1}, rng).components);
        double worst = 0.0;
        for (std::size_t i = 0; i < 10; ++i) worst = std::max(worst, std::abs(mom.mean[i] - 1.0) / mom.std_error(i));
        r.detail << "  quadratic d=10: max |mean - theta| / SE = " << worst << '\n';
        r.check(worst <= 5.0, "quadratic mean within 5 SE of theta");
    }
    {
        const ObjectiveSpec spec(ObjectiveKind::Rosenbrock, 2);
        const Vector theta{0.0, 0.0};
        constexpr double mu = 0.005;
        RandomSource rng(32), oracle_rng(33);
        CoordinateMoments mom(2);
        for (int s = 0; s < 100000; ++s) mom.add(estimate_gradient(spec, theta, EstimatorConfig{mu, 1}, rng).components);
        const auto oracle = smoothed_gradient_oracle_with_error(spec, theta, mu, 100000, oracle_rng);
        double worst = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            const double se = std::hypot(mom.std_error(i), oracle.std_error[i]);
            worst = std::max(worst, std::abs(mom.mean[i] - oracle.mean[i]) / se);
        }
        r.detail << "  rosenbrock d=2: estimator (" << mom.mean[0] << ", " << mom.mean[1] << "), oracle ("
                 << oracle.mean[0] << ", " << oracle.mean[1] << "), max diff / combined SE = " << worst << '\n';
        r.check(worst <= 5.0, "rosenbrock estimator within 5 combined SE of oracle");
    }
    const double elapsed = seconds_since(start);
    r.detail << "  runtime " << elapsed << " s\n";
    r.check(elapsed < 60.0, "runtime under 1 minute");
}

// 4. Estimator variance bound and 1/K scaling on the clipped probe.
void variance_bound(Report& r) {
    struct Case {
        std::size_t d, k;
        double mu;
    };
    constexpr double sigma = 0.5;
    constexpr int samples = 20000;
    auto mean_variance = [&](const Case& c, std::uint64_t seed, double& worst_ratio) {
        const testing::ClippedQuadraticProbe probe{c.d, 2.0, sigma};
        const double cc = probe.bound_c();
        const double bound = 8.0 * (sigma * sigma + cc * cc) * static_cast<double>(c.d) /
                             (static_cast<double>(c.k) * c.mu * c.mu);
        // 0.5*|theta|^2 = 0.5 keeps every probe point inside the unclipped region.
        const Vector theta(c.d, 1.0 / std::sqrt(static_cast<double>(c.d)));
        RandomSource rng(seed);
        CoordinateMoments mom(c.d);
        for (int s = 0; s < samples; ++s) mom.add(estimate_gradient(probe, theta, EstimatorConfig{c.mu, c.k}, rng).components);
        double sum = 0.0;
        worst_ratio = 0.0;
        for (std::size_t i = 0; i < c.d; ++i) {
            sum += mom.variance(i);
            worst_ratio = std::max(worst_ratio, mom.variance(i) / bound);
        }
        return sum / static_cast<double>(c.d);
    };
    std::vector<double> means;
    std::uint64_t seed = 40;
    for (const Case& c : {Case{10, 1, 0.1}, Case{10, 10, 0.1}, Case{100, 1, 0.05}}) {
        double worst = 0.0;
        means.push_back(mean_variance(c, ++seed, worst));
        r.detail << "  (d=" << c.d << ", K=" << c.k << ", mu=" << c.mu << "): max variance / bound = " << worst << '\n';
        r.check(worst > 0.0 && worst <= 1.0, "variance positive and within bound");
    }
    const double scaling = means[0] / means[1];
    r.detail << "  Var(K=1) / Var(K=10) = " << scaling << " (expected 10)\n";
    r.check(std::abs(scaling / 10.0 - 1.0) <= 0.2, "1/K scaling within 20%");
}

// 5. Moment quality along an R-AdaZO trajectory, and beta1 monotonicity.
void moment_quality(Report& r) {
    const ObjectiveSpec spec(ObjectiveKind::Quadratic, 1000);
    const HyperParams hp{0.9, 0.99, 0.001, 1e-8};
    const auto trace = instrumented_run(OptimizerKind::RAdaZO, spec, EstimatorConfig{0.005, 10}, hp,
                                        spec.default_theta0(), 2000, 1);
    double cos_g = 0, cos_m = 0, err_ori = 0, err_ours = 0;
    std::size_t n = 0;
    for (const auto& rec : trace) {
        if (rec.iter < 100 || !rec.diagnostics) continue;
        const auto& d = *rec.diagnostics;
        cos_g += *d.cos_g;
        cos_m += *d.cos_m;
        err_ori += *d.relerr_v_ori;
        err_ours += *d.relerr_v_ours;
        ++n;
    }
    const double k = static_cast<double>(n);
    r.detail << "  mean over " << n << " iterations: cos_g " << cos_g / k << ", cos_m " << cos_m / k
             << ", relerr_v_ori " << err_ori / k << ", relerr_v_ours " << err_ours / k << '\n';
    r.check(n == 1901, "averages cover iterations 100..2000");
    r.check(cos_m > cos_g, "cos_m above cos_g");
    r.check(err_ours < err_ori, "relerr_v_ours below relerr_v_ori");

    const ObjectiveSpec q100(ObjectiveKind::Quadratic, 100);
    const Vector theta(100, 1.0);
    std::vector<double> ratios;
    for (double beta1 : {0.1, 0.5, 0.9}) {
        RandomSource rng(5, Stream::Diagnostics);
        ratios.push_back(
            variance_reduction_ratio(q100, theta, EstimatorConfig{0.005, 1}, beta1, min_burn_in(beta1), 5000, rng).ratio);
    }
    r.detail << "  variance ratio for beta1 0.1/0.5/0.9: " << ratios[0] << " / " << ratios[1] << " / " << ratios[2]
             << '\n';
    r.check(ratios[0] > ratios[1] && ratios[1] > ratios[2], "variance ratio decreasing in beta1");
}

// 6. Hand-computed steps and the beta1 = 0 equivalence.
void exact_steps(Report& r) {
    const HyperParams hp{0.9, 0.99, 0.1, 0.0};
    auto ours = new_state(OptimizerKind::RAdaZO, 1, hp);
    auto ori = new_state(OptimizerKind::ZoAdaMM, 1, hp);
    const double d_ours = step(ours, Vector{0.0}, Vector{2.0})[0];
    const double d_ori = step(ori, Vector{0.0}, Vector{2.0})[0];
    r.detail << "  r-adazo step " << d_ours << ", zo-adamm step " << d_ori << '\n';
    r.check(std::abs(d_ours + 1.0) <= 1e-12, "r-adazo step is -1.0");
    r.check(std::abs(d_ori + 0.1) <= 1e-12, "zo-adamm step is -0.1");

    const ObjectiveSpec spec(ObjectiveKind::Rosenbrock, 8);
    const HyperParams hp0{0.0, 0.99, 0.001, 1e-8};
    auto a = new_state(OptimizerKind::RAdaZO, 8, hp0);
    auto b = new_state(OptimizerKind::ZoAdaMM, 8, hp0);
    Vector ta = spec.default_theta0(), tb = ta, g(8);
    RandomSource rng(6);
    EstimatorWorkspace ws;
    bool identical = true;
    for (int t = 0; t < 100; ++t) {
        estimate_gradient_into(spec, ta, EstimatorConfig{0.005, 10}, rng, rng, g, ws);
        step_in_place(a, ta, g);
        step_in_place(b, tb, g);
        identical = identical && a.m == b.m && a.v == b.v && ta == tb;
    }
    r.detail << "  beta1=0, 100 shared-estimate steps: " << (identical ? "bitwise identical" : "diverged") << '\n';
    r.check(identical, "beta1=0 equivalence is bitwise");
}

// 7. Determinism of written traces and lossless round trip.
void determinism(Report& r) {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "zo_acceptance_determinism";
    fs::remove_all(root);
    ExperimentConfig cfg;
    cfg.function = ObjectiveKind::Levy;
    cfg.dim = 50;
    cfg.iters = 300;
    cfg.diagnostics = true;
    std::vector<harness::ExecutionResult> results;
    for (const char* sub : {"a", "b"}) {
        cfg.out = (root / sub).string();
        results.push_back(harness::execute(cfg));
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    std::size_t files = 0, same = 0, lossless = 0;
    for (const auto& cell : results[0].cells) {
        const auto name = harness::trace_file_name(cell.optimizer, cell.seed);
        ++files;
        same += slurp(root / "a" / name) == slurp(root / "b" / name);
        lossless += harness::read_trace_file((root / "a" / name).string()).records == cell.trace;
    }
    r.detail << "  " << same << "/" << files << " trace files byte-identical, " << lossless << "/" << files
             << " round-trip exactly\n";
    r.check(files == 15 && same == files, "identical seeds give byte-identical traces");
    r.check(lossless == files, "CSV round trip is lossless");
    fs::remove_all(root);
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Report&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, "convergence comparison on synthetic functions", convergence_comparison},
        {2, "first-moment variance factor", variance_factor},
        {3, "estimator unbiasedness", unbiasedness},
        {4, "estimator variance bound and 1/K scaling", variance_bound},
        {5, "moment quality and beta1 monotonicity", moment_quality},
        {6, "hand-computed steps and beta1=0 equivalence", exact_steps},
        {7, "determinism and lossless persistence", determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Report report;
        const auto start = Clock::now();
        try {
            c.body(report);
        } catch (const std::exception& e) {
            report.check(false, std::string("exception: ") + e.what());
        }
        failures += !report.ok;
        std::cout << (report.ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name << " ("
                  << seconds_since(start) << " s)\n"
                  << report.detail.str() << std::flush;
    }
    std::cout << (failures ? "acceptance: FAILED " : "acceptance: all criteria passed") ;
    if (failures) std::cout << failures << " criteria";
    std::cout << '\n';
    return failures ? 1 : 0;
}
