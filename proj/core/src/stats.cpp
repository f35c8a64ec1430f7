#include "aqse/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aqse/distributions.hpp"

namespace aqse {

namespace {

void require_level(double level, const char* where) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument(std::string(where) + ": level must be in (0,1)");
    }
}

// Wrapped deviations of each angle about the circular mean, as plain reals.
struct LinearizedSample {
    double mean_dev = 0.0;        // residual mean of the deviations (~0)
    AngleRad center;              // circular mean
    std::vector<double> devs;     // wrapped(theta_i - center)
};

LinearizedSample linearize(std::span<const AngleRad> angles, const char* where) {
    if (angles.size() < 2) {
        throw std::invalid_argument(std::string(where) + ": need at least 2 values, got " +
                                    std::to_string(angles.size()));
    }
    LinearizedSample out;
    out.center = circular_mean(angles);
    out.devs.reserve(angles.size());
    double sum = 0.0;
    for (const AngleRad a : angles) {
        const double d = wrapped_deviation(a, out.center);
        out.devs.push_back(d);
        sum += d;
    }
    out.mean_dev = sum / static_cast<double>(angles.size());
    return out;
}

// Unbiased variance of the wrapped deviations about their own mean.
double unbiased_variance(const LinearizedSample& s) {
    double sum_sq = 0.0;
    for (const double d : s.devs) {
        const double c = d - s.mean_dev;
        sum_sq += c * c;
    }
    return sum_sq / static_cast<double>(s.devs.size() - 1);
}

}  // namespace

AngleRad circular_mean(std::span<const AngleRad> angles) {
    if (angles.empty()) {
        throw std::invalid_argument("circular_mean: empty sample");
    }
    const AngleRad ref = angles.front();
    double sum = 0.0;
    for (const AngleRad a : angles) {
        sum += wrapped_deviation(a, ref);
    }
    return AngleRad(ref.value() + sum / static_cast<double>(angles.size()));
}

StandardizedSample standardize(std::span<const AngleRad> final_mles, int n,
                               double fisher_information, double grid_step) {
    if (final_mles.size() < 2) {
        throw std::invalid_argument("standardize: need at least 2 values");
    }
    if (n < 1) {
        throw std::invalid_argument("standardize: n must be >= 1");
    }
    if (!(fisher_information > 0.0)) {
        throw std::invalid_argument("standardize: Fisher information must be > 0");
    }
    const double scale = std::sqrt(n * fisher_information);
    StandardizedSample sample;
    sample.n = n;
    sample.r = static_cast<int>(final_mles.size());
    sample.theta_bar = circular_mean(final_mles);
    sample.delta = scale * grid_step;
    sample.values.reserve(final_mles.size());
    for (const AngleRad a : final_mles) {
        sample.values.push_back(scale * wrapped_deviation(a, sample.theta_bar));
    }
    return sample;
}

BinSpec BinSpec::standard_normal(double shift) {
    BinSpec bins;
    bins.shift = shift;
    bins.inner_edges.reserve(22);
    for (int k = 0; k <= 21; ++k) {
        bins.inner_edges.push_back(-3.5 + 7.0 * k / 21.0 + shift);
    }
    return bins;
}

std::vector<int> bin_counts(const StandardizedSample& sample, const BinSpec& bins) {
    std::vector<int> counts(static_cast<std::size_t>(bins.count()), 0);
    for (const double v : sample.values) {
        const auto it =
            std::upper_bound(bins.inner_edges.begin(), bins.inner_edges.end(), v);
        ++counts[static_cast<std::size_t>(it - bins.inner_edges.begin())];
    }
    return counts;
}

std::vector<double> normal_bin_probs(const BinSpec& bins) {
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(bins.count()));
    probs.push_back(normal_cdf(bins.inner_edges.front()));
    for (std::size_t k = 1; k < bins.inner_edges.size(); ++k) {
        probs.push_back(normal_cdf(bins.inner_edges[k]) - normal_cdf(bins.inner_edges[k - 1]));
    }
    probs.push_back(1.0 - normal_cdf(bins.inner_edges.back()));
    return probs;
}

GofResult gof_test(const StandardizedSample& sample, double significance) {
    if (sample.r < 50) {
        throw std::invalid_argument(
            "gof_test: need r >= 50 so the tail bins keep nonvanishing expected counts");
    }
    require_level(significance, "gof_test");
    const BinSpec bins = BinSpec::standard_normal(sample.delta / 10000.0);
    GofResult result;
    result.counts = bin_counts(sample, bins);
    const std::vector<double> probs = normal_bin_probs(bins);
    result.expected.reserve(probs.size());
    result.statistic = 0.0;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        const double expected = sample.r * probs[b];
        if (expected <= 0.0) {
            throw std::runtime_error("gof_test: bin " + std::to_string(b) +
                                     " has zero expected count");
        }
        result.expected.push_back(expected);
        const double diff = result.counts[b] - expected;
        result.statistic += diff * diff / expected;
    }
    result.dof = bins.count() - 2;  // normalization and the use of theta_bar
    result.significance = significance;
    result.critical_value = chisq_quantile(result.dof, 1.0 - significance);
    result.accept = result.statistic <= result.critical_value;
    return result;
}

ConfidenceInterval t_mean_interval(std::span<const double> values, double level) {
    if (values.size() < 2) {
        throw std::invalid_argument("t_mean_interval: need at least 2 values");
    }
    require_level(level, "t_mean_interval");
    const auto r = static_cast<double>(values.size());
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= r;
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    var /= r - 1.0;
    const double half =
        t_quantile(static_cast<int>(values.size()) - 1, 0.5 * (1.0 + level)) *
        std::sqrt(var / r);
    return {mean - half, mean + half, level, ConfidenceInterval::Target::mean};
}

ConfidenceInterval mean_ci(std::span<const AngleRad> final_mles, double level) {
    require_level(level, "mean_ci");
    const LinearizedSample s = linearize(final_mles, "mean_ci");
    const auto r = static_cast<double>(s.devs.size());
    const double var = unbiased_variance(s);
    const double half = t_quantile(static_cast<int>(s.devs.size()) - 1, 0.5 * (1.0 + level)) *
                        std::sqrt(var / r);
    const double center_rad = s.center.value() + s.mean_dev;
    const double to_deg = 180.0 / std::numbers::pi;
    return {(center_rad - half) * to_deg, (center_rad + half) * to_deg, level,
            ConfidenceInterval::Target::mean};
}

ConfidenceInterval variance_ci(std::span<const AngleRad> final_mles, int n, double level) {
    require_level(level, "variance_ci");
    if (n < 1) {
        throw std::invalid_argument("variance_ci: n must be >= 1");
    }
    const LinearizedSample s = linearize(final_mles, "variance_ci");
    const int r = static_cast<int>(s.devs.size());
    const double scaled = n * (r - 1.0) * unbiased_variance(s);
    return {scaled / chisq_quantile(r - 1, 0.5 * (1.0 + level)),
            scaled / chisq_quantile(r - 1, 0.5 * (1.0 - level)), level,
            ConfidenceInterval::Target::variance};
}

}  // namespace aqse
