#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "aqse/outcome_source.hpp"
#include "aqse/qubit_model.hpp"

namespace aqse {

/// Accumulated log-likelihood over G evenly spaced grid points
/// theta_k = k * (pi/2)/G, k = 0..G-1. Entries are sums of per-photon log
/// probabilities, so every finite entry is <= 0; a point whose probability
/// underflowed to exactly zero holds -inf and never wins the argmax.
class LikelihoodGrid {
  public:
    explicit LikelihoodGrid(int grid_size);  // throws std::invalid_argument if < 2

    int size() const { return size_; }
    double step() const { return step_; }
    AngleRad angle(int index) const { return AngleRad(index * step_); }
    double value(int index) const { return values_[static_cast<std::size_t>(index)]; }
    std::span<const double> values() const { return values_; }

    /// Grid index nearest to an angle, wrapping around the pi/2 circle.
    int nearest_index(AngleRad a) const;

  private:
    friend class AdaptiveEstimator;
    int size_;
    double step_;
    std::vector<double> values_;
};

/// Per-outcome log-probability lookup, indexed by the wrapped grid offset
/// d = (setting index - point index) mod G:
///   log_p[x][d] = log p(x; theta_0, theta_d).
/// Because the outcome probability depends only on theta_hat - theta_k, one
/// photon's contribution to the whole grid is this table added under a
/// circular shift; that replaces per-point trig with a single table pass.
/// Immutable after construction and shareable across concurrent trials.
class OutcomeLogTables {
  public:
    explicit OutcomeLogTables(int grid_size);

    int grid_size() const { return static_cast<int>(log_p1_.size()); }
    std::span<const double> log_p(int outcome) const;

  private:
    std::vector<double> log_p1_;
    std::vector<double> log_p2_;
};

/// Argmax over accumulated log-likelihood values with the tie-break used
/// throughout: -inf entries are skipped; among equal maxima the point with
/// the smallest wrapped index distance to previous_index wins, then the
/// smallest index. Throws std::runtime_error when every entry is -inf.
int likelihood_argmax(std::span<const double> values, int previous_index);

/// Sequential adaptive maximum-likelihood estimator. Starts from l_0 = 0
/// and an initial guess snapped to the grid; each update() folds in one
/// photon measured at the current MLE and re-maximizes on the grid.
///
/// Argmax ties break toward the grid point closest (wrapped) to the
/// previous MLE, then toward the smaller index; the early likelihood is
/// reflection-symmetric about the setting and would otherwise flap.
///
/// Not safe for concurrent use; run one estimator per trial.
class AdaptiveEstimator {
  public:
    AdaptiveEstimator(int grid_size, AngleRad initial_guess,
                      std::shared_ptr<const OutcomeLogTables> tables = nullptr);

    /// Adds log p(outcome; theta_k, mle) to every grid point and moves the
    /// MLE to the new argmax. Throws std::invalid_argument on a bad outcome
    /// label and std::runtime_error if every entry has reached -inf.
    void update(int outcome);

    AngleRad mle() const { return grid_.angle(mle_index_); }
    int mle_index() const { return mle_index_; }
    int step_count() const { return step_count_; }
    AngleRad initial_guess() const { return grid_.angle(initial_index_); }
    int initial_index() const { return initial_index_; }
    const LikelihoodGrid& grid() const { return grid_; }
    const OutcomeLogTables& tables() const { return *tables_; }

  private:
    LikelihoodGrid grid_;
    std::shared_ptr<const OutcomeLogTables> tables_;
    int initial_index_;
    int mle_index_;
    int step_count_ = 0;
};

/// One adaptive run as recorded by the harness.
struct TrajectoryStep {
    AngleRad setting;    // POVM setting used for this photon (= previous MLE)
    int outcome = 0;     // 1 or 2
    AngleRad mle_after;  // MLE after folding this photon in
};

struct Trajectory {
    AngleRad true_value;    // known to the harness only, never to the estimator
    AngleRad initial_guess; // grid-snapped theta_hat_0
    int grid_size = 0;
    std::uint64_t trial_seed = 0;
    std::vector<TrajectoryStep> steps;
};

bool operator==(const TrajectoryStep& a, const TrajectoryStep& b);
bool operator==(const Trajectory& a, const Trajectory& b);

/// Runs the adaptive loop for n photons against an outcome source: set the
/// POVM at the latest MLE, draw, update, record. Deterministic for a fixed
/// source state and configuration.
Trajectory run_sequence(AngleRad theta_true, int n_photons, OutcomeSource& source,
                        int grid_size, AngleRad initial_guess,
                        std::shared_ptr<const OutcomeLogTables> tables = nullptr,
                        std::uint64_t seed_tag = 0);

}  // namespace aqse
