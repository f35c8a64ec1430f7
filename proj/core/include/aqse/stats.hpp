#pragma once

#include <span>
#include <vector>

#include "aqse/qubit_model.hpp"

namespace aqse {

/// Final-step estimates standardized for the normality test: each value is
/// sqrt(n*J) * wrapped(theta_i - theta_bar), where theta_bar is the circular
/// sample mean. delta is the grid resolution on the same scale; the bin
/// edges get shifted by delta/10000 so no standardized value (itself an
/// integer multiple of delta) can sit exactly on a boundary.
struct StandardizedSample {
    std::vector<double> values;
    int n = 0;  // photons per trial
    int r = 0;  // trials
    AngleRad theta_bar;
    double delta = 0.0;
};

/// 23 bins over the real line: two open tails and 21 equal-width bins
/// partitioning [-3.5, 3.5], every edge offset by `shift`.
struct BinSpec {
    static BinSpec standard_normal(double shift);

    std::vector<double> inner_edges;  // 22 ascending edges
    double shift = 0.0;

    int count() const { return static_cast<int>(inner_edges.size()) + 1; }
};

struct GofResult {
    std::vector<int> counts;       // observed N_b
    std::vector<double> expected;  // r * p_b
    double statistic = 0.0;        // Pearson X^2 over all bins
    int dof = 0;                   // bins - 2 (normalization + sample mean)
    double critical_value = 0.0;
    bool accept = false;
    double significance = 0.0;
};

struct ConfidenceInterval {
    enum class Target { mean, variance };

    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
    Target target = Target::mean;
};

/// Wrap-aware sample mean: deviations from a reference element are folded
/// into (-pi/4, pi/4] and averaged. Well defined whenever the sample is
/// concentrated on less than half the circle.
AngleRad circular_mean(std::span<const AngleRad> angles);

/// Standardizes final MLEs; requires r >= 2 values. grid_step defaults to
/// the 10000-point grid resolution (pi/2)/10000.
StandardizedSample standardize(std::span<const AngleRad> final_mles, int n,
                               double fisher_information,
                               double grid_step = kHalfPi / 10000.0);

/// Histogram of the standardized values; counts sum to r.
std::vector<int> bin_counts(const StandardizedSample& sample, const BinSpec& bins);

/// Bin probabilities under the standard normal null; they sum to 1.
std::vector<double> normal_bin_probs(const BinSpec& bins);

/// Pearson chi-square goodness-of-fit test of the standardized sample
/// against N(0,1) on the 23 shifted bins, dof = 21. Requires r >= 50 so the
/// chi-square approximation is meaningful with the tail bins kept.
GofResult gof_test(const StandardizedSample& sample, double significance = 0.10);

/// Two-sided Student-t interval for the mean of plain (non-circular) values.
ConfidenceInterval t_mean_interval(std::span<const double> values, double level);

/// Confidence interval for the mean of the final MLEs, reported in degrees.
/// Deviations are wrapped about the circular mean before the t interval is
/// formed; bounds may leave [0, 90) when the mean sits near the wrap point.
ConfidenceInterval mean_ci(std::span<const AngleRad> final_mles, double level);

/// Confidence interval for v, the variance of sqrt(n)(theta_hat - mu), in
/// rad^2: [ n(r-1)Vbar / chisq_{r-1,(1+level)/2}, n(r-1)Vbar / chisq_{r-1,(1-level)/2} ].
ConfidenceInterval variance_ci(std::span<const AngleRad> final_mles, int n, double level);

}  // namespace aqse
