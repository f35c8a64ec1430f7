// Batch front end: seeded ensemble runs, trace replay verification,
// statistical analysis, and table emission, all as plot-ready CSV/JSON.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aqse/harness.hpp"
#include "aqse/trace.hpp"
#include "aqse/version.hpp"

namespace {

int run_command(const std::string& config_path, const std::optional<double>& theta_true,
                const std::optional<int>& n_photons, const std::optional<int>& trials,
                const std::optional<int>& grid, const std::optional<std::uint64_t>& seed,
                const std::optional<std::string>& out_dir, const std::optional<int>& workers) {
    aqse::ExperimentConfig config = aqse::load_config(config_path);
    if (theta_true) config.theta_true_deg = *theta_true;
    if (n_photons) config.n_photons = *n_photons;
    if (trials) config.trials = *trials;
    if (grid) config.grid_size = *grid;
    if (seed) config.master_seed = *seed;
    if (out_dir) config.output_dir = *out_dir;
    if (workers) config.workers = *workers;
    config.validate();

    const aqse::EnsembleResult result = aqse::cmd_run(config);
    std::cout << "ran " << result.config.trials << " trials x " << result.config.n_photons
              << " photons at theta_true=" << result.config.theta_true_deg
              << " deg; outputs in " << result.config.output_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive single-qubit polarization-angle estimation laboratory"};
    app.set_version_flag("--version", std::string(aqse::kVersionTag));
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Execute a seeded ensemble of adaptive trials");
    std::string config_path;
    std::optional<double> theta_true;
    std::optional<int> n_photons, trials, grid, workers;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    run->add_option("--config", config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--theta-true", theta_true, "True HWP angle in degrees");
    run->add_option("--n", n_photons, "Photons per trial");
    run->add_option("--trials", trials, "Independent trials");
    run->add_option("--grid", grid, "Likelihood grid size");
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--workers", workers, "Worker threads (0 = all cores)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Replay a recorded run and compute statistics");
    std::string in_dir;
    std::optional<double> significance, ci_level;
    analyze->add_option("--in", in_dir, "Directory produced by run")
        ->required()
        ->check(CLI::ExistingDirectory);
    analyze->add_option("--significance", significance, "Goodness-of-fit significance level");
    analyze->add_option("--ci", ci_level, "Confidence level for the intervals");

    // replay
    auto* replay = app.add_subcommand("replay", "Verify a trace reproduces bit-exactly");
    std::string trace_path;
    replay->add_option("--trace", trace_path, "trace.csv to verify")
        ->required()
        ->check(CLI::ExistingFile);

    // report
    auto* report = app.add_subcommand("report", "Combine summary.json files into a CSV table");
    std::vector<std::string> summary_paths;
    std::string report_out;
    report->add_option("summaries", summary_paths, "summary.json files")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("--out", report_out, "Write the table here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(config_path, theta_true, n_photons, trials, grid, seed, out_dir,
                               workers);
        }
        if (analyze->parsed()) {
            const aqse::EnsembleSummary summary = aqse::cmd_analyze(in_dir, significance, ci_level);
            char line[256];
            std::snprintf(line, sizeof(line),
                          "theta_true=%.4f deg  mu=%.4f +/- %.4f deg  v=[%.6g, %.6g] rad^2  "
                          "X2=%.4g (dof=%d, critical=%.4g) -> %s\n",
                          summary.theta_true_deg, summary.mu_deg, summary.mu_halfwidth_deg,
                          summary.v_lower_rad2, summary.v_upper_rad2, summary.x2, summary.dof,
                          summary.critical_value, summary.accept ? "accept" : "reject");
            std::cout << line;
            return 0;
        }
        if (replay->parsed()) {
            const aqse::ReplayReport rep = aqse::cmd_replay(trace_path);
            std::cout << rep.message << "\n";
            return rep.ok ? 0 : 2;
        }
        if (report->parsed()) {
            std::vector<std::filesystem::path> paths(summary_paths.begin(), summary_paths.end());
            if (report_out.empty()) {
                aqse::cmd_report(paths, std::cout);
            } else {
                std::ofstream out(report_out);
                if (!out) {
                    throw std::runtime_error("cannot open " + report_out + " for writing");
                }
                aqse::cmd_report(paths, out);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
