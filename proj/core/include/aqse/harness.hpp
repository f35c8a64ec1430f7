#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aqse/adaptive_estimator.hpp"
#include "aqse/stats.hpp"

namespace aqse {

/// Starting point of each trial's estimator: either drawn uniformly from
/// the grid with the trial's own generator, or a fixed angle in degrees.
struct InitialGuess {
    bool random = true;
    double fixed_deg = 0.0;
};

/// One ensemble: `trials` independent adaptive runs of `n_photons` photons
/// at a common true angle. Angles are degrees at this boundary and radians
/// everywhere inside.
struct ExperimentConfig {
    double theta_true_deg = 0.0;
    int n_photons = 300;
    int trials = 500;
    int grid_size = 10000;
    std::uint64_t master_seed = 0;
    InitialGuess initial_guess;
    double significance = 0.10;
    double ci_level = 0.90;
    std::filesystem::path output_dir = "out";
    int workers = 0;  // 0 = one per available core

    AngleRad theta_true() const { return AngleRad::from_degrees(theta_true_deg); }

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// Flat-JSON config file; unknown keys are ignored, `initial_guess` is
/// either the string "random" or a number in degrees.
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

struct EnsembleResult {
    ExperimentConfig config;              // normalized (theta wrapped into [0,90))
    std::vector<Trajectory> trajectories; // indexed by trial id
};

/// Runs the configured trials in memory, in parallel over trials. Trial t
/// is seeded with mix_seed(master_seed, t); a random initial guess takes
/// one extra draw from that stream (engine output mod grid_size) before
/// the outcome draws. Deterministic in (config, master_seed), independent
/// of the worker count.
EnsembleResult run_trials(const ExperimentConfig& config);

/// Statistical digest of one analyzed ensemble; everything here is
/// recomputable from the trace file and config alone.
struct EnsembleSummary {
    double theta_true_deg = 0.0;
    int n_photons = 0;
    int trials = 0;
    double mu_deg = 0.0;            // mean of final MLEs, windowed near theta_true
    double mu_halfwidth_deg = 0.0;  // t-interval half width
    double ci_level = 0.0;
    double v_lower_rad2 = 0.0;      // interval for the variance of sqrt(n)(mle - mu)
    double v_upper_rad2 = 0.0;
    double x2 = 0.0;
    int dof = 0;
    double critical_value = 0.0;
    bool accept = false;
    double significance = 0.0;
    std::vector<std::pair<int, double>> median_abs_err_rad;  // checkpoints by n
    std::vector<std::pair<int, double>> rmse_rad;            // checkpoints by n
    ExperimentConfig config;  // provenance
};

/// Runs the ensemble and persists it under config.output_dir:
///   config.json       effective configuration (provenance for replay)
///   trace.csv         every (trial, step, setting_rad, outcome)
///   trajectories.csv  header `trial,step,mle_deg`, degrees with 4 decimals
/// Reruns with the same config and seed produce byte-identical files.
EnsembleResult cmd_run(const ExperimentConfig& config);

/// Recomputes every trajectory from the stored trace by replay (the
/// estimator sees only the recorded outcomes; the true angle is metadata
/// for the error columns) and writes analysis outputs into input_dir:
///   histogram.csv    header `bin_index,lower,upper,observed,expected`
///   density.csv      standard normal curve samples for plotting
///   summary.json     this EnsembleSummary
///   consistency.csv  per-n median and RMSE of the wrapped error, degrees
/// significance / ci_level fall back to the stored config when not given.
EnsembleSummary cmd_analyze(const std::filesystem::path& input_dir,
                            std::optional<double> significance = std::nullopt,
                            std::optional<double> ci_level = std::nullopt);

struct ReplayReport {
    int trials_total = 0;
    int trials_matched = 0;
    bool ok = false;
    int first_bad_trial = -1;
    int first_bad_step = -1;
    std::string message;
};

/// Re-runs the estimator against every recorded trial of a trace file
/// (config.json must sit next to it) and reports the first divergence, if
/// any. When trajectories.csv is present the recorded MLEs are checked too,
/// which also catches corruption in a trial's final step.
ReplayReport cmd_replay(const std::filesystem::path& trace_file);

/// Emits one CSV row per summary.json:
/// `theta_true_deg,mu_deg,mu_halfwidth_deg,v_lower,v_upper,X2,accept`.
void cmd_report(std::span<const std::filesystem::path> summary_files, std::ostream& out);

/// Reads a summary.json produced by cmd_analyze.
EnsembleSummary load_summary(const std::filesystem::path& path);

}  // namespace aqse
