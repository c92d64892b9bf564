// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Multi-seed orchestration: runs every (optimizer, seed) cell, writes one
// trace CSV per cell plus summary.csv, and computes summary statistics.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "zo/diagnostics.hpp"
#include "zo/errors.hpp"
#include "zo/harness/config.hpp"
#include "zo/harness/trace_io.hpp"
#include "zo/run.hpp"
#include "zo/sampler.hpp"

namespace zo::harness {

/// Gaps are floored here before taking logarithms.
inline constexpr double kGapFloor = 1e-16;

struct CellResult {
    OptimizerKind optimizer = OptimizerKind::RAdaZO;
    std::uint64_t seed = 0;
    std::vector<TraceRecord> trace;
    double wall_seconds = 0.0;

    bool failed() const { return trace.empty() || trace.back().error.has_value(); }
};

struct OptimizerSummary {
    OptimizerKind optimizer = OptimizerKind::RAdaZO;
    std::size_t seeds = 0;
    std::size_t failed = 0;
    double final_gap_min = std::numeric_limits<double>::quiet_NaN();
    double final_gap_median = std::numeric_limits<double>::quiet_NaN();
    double final_gap_max = std::numeric_limits<double>::quiet_NaN();
    /// Trapezoidal area under log10(max(gap, floor)) versus iteration, averaged over successful seeds.
    double area_log_gap = std::numeric_limits<double>::quiet_NaN();
    double wall_seconds = 0.0;
};

struct RunSummary {
    std::vector<OptimizerSummary> rows;

    const OptimizerSummary* find(OptimizerKind kind) const {
        for (const auto& r : rows)
            if (r.optimizer == kind) return &r;
        return nullptr;
    }
};

struct ExecutionResult {
    std::vector<CellResult> cells;
    RunSummary summary;
};

inline double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline double area_under_log_gap(const std::vector<TraceRecord>& trace) {
    double area = 0.0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const double y0 = std::log10(std::max(trace[i - 1].gap, kGapFloor));
        const double y1 = std::log10(std::max(trace[i].gap, kGapFloor));
        area += 0.5 * (y0 + y1) * static_cast<double>(trace[i].iter - trace[i - 1].iter);
    }
    return area;
}

/// Summary rows in `order`; statistics use only cells that completed.
inline RunSummary summarize(const std::vector<OptimizerKind>& order, const std::vector<CellResult>& cells) {
    RunSummary summary;
    for (OptimizerKind kind : order) {
        OptimizerSummary row;
        row.optimizer = kind;
        std::vector<double> finals;
        double area_sum = 0.0;
        for (const CellResult& cell : cells) {
            if (cell.optimizer != kind) continue;
            ++row.seeds;
            row.wall_seconds += cell.wall_seconds;
            if (cell.failed()) {
                ++row.failed;
                continue;
            }
            finals.push_back(cell.trace.back().gap);
            area_sum += area_under_log_gap(cell.trace);
        }
        if (!finals.empty()) {
            row.final_gap_min = *std::min_element(finals.begin(), finals.end());
            row.final_gap_max = *std::max_element(finals.begin(), finals.end());
            row.final_gap_median = median(finals);
            row.area_log_gap = area_sum / static_cast<double>(finals.size());
        }
        summary.rows.push_back(row);
    }
    return summary;
}

/// Pointwise mean gap over seeds, per row index; rows missing from shorter (aborted) traces are skipped.
inline std::vector<std::pair<double, double>> mean_gap_curve(const std::vector<const std::vector<TraceRecord>*>& traces) {
    std::size_t longest = 0;
    for (const auto* t : traces) longest = std::max(longest, t->size());
    std::vector<std::pair<double, double>> curve;
    curve.reserve(longest);
    for (std::size_t i = 0; i < longest; ++i) {
        double sum = 0.0;
        std::size_t n = 0;
        double iter = 0.0;
        for (const auto* t : traces) {
            if (i < t->size()) {
                sum += (*t)[i].gap;
                iter = static_cast<double>((*t)[i].iter);
                ++n;
            }
        }
        curve.emplace_back(iter, sum / static_cast<double>(n));
    }
    return curve;
}

inline std::string trace_file_name(OptimizerKind kind, std::uint64_t seed) {
    return std::string(to_string(kind)) + "_seed" + std::to_string(seed) + ".csv";
}

/// Metadata block written at the top of every trace file.
inline Header trace_header(const ExperimentConfig& cfg, OptimizerKind kind, std::uint64_t seed) {
    Header h;
    h.emplace_back("zo-bench", std::string(kVersion));
    h.emplace_back("prng", std::string(kPrngName));
    h.emplace_back("run_optimizer", std::string(to_string(kind)));
    h.emplace_back("run_seed", std::to_string(seed));
    for (auto& kv : to_key_values(cfg)) h.push_back(std::move(kv));
    return h;
}

inline CellResult run_cell(const ExperimentConfig& cfg, OptimizerKind kind, std::uint64_t seed) {
    const ObjectiveSpec spec = cfg.objective();
    const Vector theta0 = cfg.initial_theta();
    RunOptions opts;
    opts.v0 = cfg.v0;
    opts.record_every = default_record_stride(cfg.iters);

    CellResult cell;
    cell.optimizer = kind;
    cell.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    cell.trace = cfg.diagnostics ? instrumented_run(kind, spec, cfg.estimator, cfg.hp, theta0, cfg.iters, seed, opts)
                                 : run(kind, spec, cfg.estimator, cfg.hp, theta0, cfg.iters, seed, opts);
    cell.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

/// Runs every cell of `cfg` on a small worker pool. Cells are returned in
/// (optimizer, seed) config order regardless of completion order.
inline std::vector<CellResult> run_cells(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<std::pair<OptimizerKind, std::uint64_t>> jobs;
    for (OptimizerKind kind : cfg.optimizers)
        for (std::uint64_t seed : cfg.seeds) jobs.emplace_back(kind, seed);

    std::vector<CellResult> cells(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                cells[i] = run_cell(cfg, jobs[i].first, jobs[i].second);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    unsigned threads = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return cells;
}

inline void write_summary_csv(std::ostream& os, const RunSummary& summary) {
    os << "optimizer,seeds,failed,final_gap_min,final_gap_median,final_gap_max,area_log10_gap,wall_seconds\n";
    for (const auto& r : summary.rows) {
        os << to_string(r.optimizer) << ',' << r.seeds << ',' << r.failed << ',' << format_real(r.final_gap_min)
           << ',' << format_real(r.final_gap_median) << ',' << format_real(r.final_gap_max) << ','
           << format_real(r.area_log_gap) << ',' << format_real(r.wall_seconds) << '\n';
    }
}

/// Writes trace files and summary.csv into cfg.out. Throws IoError naming the
/// files already written if anything fails.
inline void write_outputs(const ExperimentConfig& cfg, const std::vector<CellResult>& cells, const RunSummary& summary) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    auto fail = [&](const std::string& what) {
        std::string msg = what + " (partial outputs:";
        for (const auto& w : written) msg += ' ' + w;
        throw IoError(msg + ")");
    };

    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) fail("cannot create output directory '" + cfg.out + "': " + ec.message());

    for (const CellResult& cell : cells) {
        const fs::path path = fs::path(cfg.out) / trace_file_name(cell.optimizer, cell.seed);
        std::ofstream os(path, std::ios::binary);
        if (!os) fail("cannot open '" + path.string() + "' for writing");
        write_trace(os, trace_header(cfg, cell.optimizer, cell.seed), cell.trace, cfg.diagnostics);
        if (!os) fail("write failed for '" + path.string() + "'");
        written.push_back(path.string());
    }
    const fs::path path = fs::path(cfg.out) / "summary.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("cannot open '" + path.string() + "' for writing");
    write_summary_csv(os, summary);
    if (!os) fail("write failed for '" + path.string() + "'");
}

/// Runs all cells, writes outputs when `write_files` is set, and returns traces and summary.
inline ExecutionResult execute(const ExperimentConfig& cfg, bool write_files = true) {
    ExecutionResult result;
    result.cells = run_cells(cfg);
    result.summary = summarize(cfg.optimizers, result.cells);
    if (write_files) write_outputs(cfg, result.cells, result.summary);
    return result;
}

struct SweepRow {
    double beta1 = 0.0;
    double final_gap_median = 0.0;
    RunSummary summary;
};

/// One execute per beta1 value (outputs under <out>/beta1_<value>), tabulating r-adazo's median final gap.
inline std::vector<SweepRow> beta1_sweep(const ExperimentConfig& cfg, const std::vector<double>& values,
                                         bool write_files = true) {
    if (values.empty()) throw ArgumentError("beta1_sweep: no beta1 values given");
    if (std::set<double>(values.begin(), values.end()).size() != values.size())
        throw ArgumentError("beta1_sweep: duplicate beta1 values");
    if (std::find(cfg.optimizers.begin(), cfg.optimizers.end(), OptimizerKind::RAdaZO) == cfg.optimizers.end())
        throw ArgumentError("beta1_sweep: r-adazo must be among the selected optimizers");

    std::vector<SweepRow> rows;
    for (double beta1 : values) {
        ExperimentConfig sub = cfg;
        sub.hp.beta1 = beta1;
        sub.out = (std::filesystem::path(cfg.out) / ("beta1_" + format_shortest(beta1))).string();
        ExecutionResult res = execute(sub, write_files);
        rows.push_back({beta1, res.summary.find(OptimizerKind::RAdaZO)->final_gap_median, std::move(res.summary)});
    }
    if (write_files) {
        std::filesystem::create_directories(cfg.out);
        const auto path = std::filesystem::path(cfg.out) / "sweep.csv";
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
        os << "beta1,final_gap_median\n";
        for (const auto& r : rows) os << format_shortest(r.beta1) << ',' << format_real(r.final_gap_median) << '\n';
    }
    return rows;
}

} // namespace zo::harness
