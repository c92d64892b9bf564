// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// zo-bench: run, plot and sweep zeroth-order optimizer benchmarks.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zo/harness/config.hpp"
#include "zo/harness/execute.hpp"
#include "zo/harness/svg_plot.hpp"

namespace {

using namespace zo::harness;

void print_summary(const RunSummary& summary) {
    std::printf("%-12s %5s %6s %14s %14s %14s %10s\n", "optimizer", "seeds", "failed", "gap_min", "gap_median",
                "gap_max", "seconds");
    for (const auto& r : summary.rows) {
        std::printf("%-12s %5zu %6zu %14.6g %14.6g %14.6g %10.2f\n", std::string(zo::to_string(r.optimizer)).c_str(),
                    r.seeds, r.failed, r.final_gap_min, r.final_gap_median, r.final_gap_max, r.wall_seconds);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeroth-order optimizer benchmark"};
    app.require_subcommand(1);

    ExperimentConfig run_cfg;
    ConfigTokens run_tokens;
    auto* run_cmd = app.add_subcommand("run", "Run every (optimizer, seed) cell and write traces + summary");
    add_experiment_options(*run_cmd, run_cfg, run_tokens);
    std::string run_plot;
    run_cmd->add_option("--plot", run_plot, "Also write an SVG convergence plot to this path");

    std::string plot_in, plot_out, plot_title;
    auto* plot_cmd = app.add_subcommand("plot", "Plot mean-over-seeds gap curves from a run directory");
    plot_cmd->add_option("--in", plot_in, "Run output directory")->required();
    plot_cmd->add_option("--out", plot_out, "SVG output path")->required();
    plot_cmd->add_option("--title", plot_title, "Plot title");

    ExperimentConfig sweep_cfg;
    ConfigTokens sweep_tokens;
    sweep_tokens.optimizers = {"r-adazo"};
    std::vector<double> sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep-beta1", "Repeat the run for several beta1 values");
    add_experiment_options(*sweep_cmd, sweep_cfg, sweep_tokens);
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated beta1 values")->delimiter(',')->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            finalize_config(run_cfg, run_tokens);
            const ExecutionResult result = execute(run_cfg);
            print_summary(result.summary);
            if (!run_plot.empty())
                emit_plot(series_from_cells(run_cfg.optimizers, result.cells), run_plot,
                          std::string(zo::to_string(run_cfg.function)));
            std::printf("wrote %zu traces + summary.csv to %s\n", result.cells.size(), run_cfg.out.c_str());
        } else if (*plot_cmd) {
            emit_plot(load_plot_series(plot_in), plot_out, plot_title);
            std::printf("wrote %s\n", plot_out.c_str());
        } else if (*sweep_cmd) {
            finalize_config(sweep_cfg, sweep_tokens);
            const auto rows = beta1_sweep(sweep_cfg, sweep_values);
            std::printf("%-8s %14s\n", "beta1", "gap_median");
            for (const auto& r : rows) std::printf("%-8g %14.6g\n", r.beta1, r.final_gap_median);
        }
    } catch (const zo::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
