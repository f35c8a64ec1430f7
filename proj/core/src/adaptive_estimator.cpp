#include "aqse/adaptive_estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aqse {

LikelihoodGrid::LikelihoodGrid(int grid_size)
    : size_(grid_size),
      step_(kHalfPi / grid_size),
      values_(grid_size > 0 ? static_cast<std::size_t>(grid_size) : 0, 0.0) {
    if (grid_size < 2) {
        throw std::invalid_argument("LikelihoodGrid: grid_size must be >= 2, got " +
                                    std::to_string(grid_size));
    }
}

int LikelihoodGrid::nearest_index(AngleRad a) const {
    const long idx = std::lround(a.value() / step_);
    return static_cast<int>(idx % size_);  // lround can land on G for angles just below pi/2
}

OutcomeLogTables::OutcomeLogTables(int grid_size) {
    const LikelihoodGrid grid(grid_size);
    log_p1_.resize(static_cast<std::size_t>(grid_size));
    log_p2_.resize(static_cast<std::size_t>(grid_size));
    const AngleRad origin(0.0);
    for (int d = 0; d < grid_size; ++d) {
        log_p1_[static_cast<std::size_t>(d)] =
            std::log(outcome_probability(1, origin, grid.angle(d)));
        log_p2_[static_cast<std::size_t>(d)] =
            std::log(outcome_probability(2, origin, grid.angle(d)));
    }
}

std::span<const double> OutcomeLogTables::log_p(int outcome) const {
    if (outcome == 1) return log_p1_;
    if (outcome == 2) return log_p2_;
    throw std::invalid_argument("OutcomeLogTables::log_p: outcome must be 1 or 2");
}

AdaptiveEstimator::AdaptiveEstimator(int grid_size, AngleRad initial_guess,
                                     std::shared_ptr<const OutcomeLogTables> tables)
    : grid_(grid_size), tables_(std::move(tables)) {
    if (!tables_) {
        tables_ = std::make_shared<const OutcomeLogTables>(grid_size);
    } else if (tables_->grid_size() != grid_size) {
        throw std::invalid_argument("AdaptiveEstimator: shared tables built for grid size " +
                                    std::to_string(tables_->grid_size()) + ", estimator uses " +
                                    std::to_string(grid_size));
    }
    initial_index_ = grid_.nearest_index(initial_guess);
    mle_index_ = initial_index_;
}

void AdaptiveEstimator::update(int outcome) {
    const std::span<const double> tab = tables_->log_p(outcome);
    const int g = grid_.size_;
    const int m = mle_index_;
    double* values = grid_.values_.data();
    const double* t = tab.data();
    // values[k] += tab[(m - k) mod G], split at the wrap point.
    for (int k = 0; k <= m; ++k) values[k] += t[m - k];
    for (int k = m + 1; k < g; ++k) values[k] += t[m - k + g];
    mle_index_ = likelihood_argmax(grid_.values_, m);
    ++step_count_;
}

int likelihood_argmax(std::span<const double> values, int previous_index) {
    const int g = static_cast<int>(values.size());
    double best = -std::numeric_limits<double>::infinity();
    int best_index = -1;
    int best_dist = g;  // wrapped index distance to the previous MLE
    for (int k = 0; k < g; ++k) {
        const double v = values[static_cast<std::size_t>(k)];
        if (v == -std::numeric_limits<double>::infinity()) continue;
        if (v < best) continue;
        const int raw = k >= previous_index ? k - previous_index : previous_index - k;
        const int dist = raw <= g - raw ? raw : g - raw;
        // Strictly better value wins; equal value falls back to distance,
        // then to the smaller index (the scan order keeps the first seen).
        if (v > best || dist < best_dist) {
            best = v;
            best_index = k;
            best_dist = dist;
        }
    }
    if (best_index < 0) {
        throw std::runtime_error("likelihood_argmax: every grid point is -inf");
    }
    return best_index;
}

bool operator==(const TrajectoryStep& a, const TrajectoryStep& b) {
    return a.setting == b.setting && a.outcome == b.outcome && a.mle_after == b.mle_after;
}

bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.true_value == b.true_value && a.initial_guess == b.initial_guess &&
           a.grid_size == b.grid_size && a.trial_seed == b.trial_seed && a.steps == b.steps;
}

Trajectory run_sequence(AngleRad theta_true, int n_photons, OutcomeSource& source,
                        int grid_size, AngleRad initial_guess,
                        std::shared_ptr<const OutcomeLogTables> tables,
                        std::uint64_t seed_tag) {
    if (n_photons < 1) {
        throw std::invalid_argument("run_sequence: n_photons must be >= 1, got " +
                                    std::to_string(n_photons));
    }
    AdaptiveEstimator estimator(grid_size, initial_guess, std::move(tables));
    Trajectory trajectory;
    trajectory.true_value = theta_true;
    trajectory.initial_guess = estimator.initial_guess();
    trajectory.grid_size = grid_size;
    trajectory.trial_seed = seed_tag;
    trajectory.steps.reserve(static_cast<std::size_t>(n_photons));
    for (int i = 0; i < n_photons; ++i) {
        const AngleRad setting = estimator.mle();
        const int outcome = source.draw(theta_true, setting);
        estimator.update(outcome);
        trajectory.steps.push_back({setting, outcome, estimator.mle()});
    }
    return trajectory;
}

}  // namespace aqse
