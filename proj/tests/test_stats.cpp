#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "aqse/distributions.hpp"
#include "aqse/outcome_source.hpp"
#include "aqse/stats.hpp"

using namespace aqse;

namespace {

// Deterministic standard normal draws (Box-Muller over the pinned uniform).
class NormalDraws {
  public:
    explicit NormalDraws(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_unit(rng_);
        while (u1 == 0.0) u1 = uniform_unit(rng_);
        const double u2 = uniform_unit(rng_);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

StandardizedSample centered_sample(const std::vector<double>& draws, int n = 300) {
    StandardizedSample s;
    s.n = n;
    s.r = static_cast<int>(draws.size());
    s.delta = std::sqrt(n * 16.0) * std::numbers::pi / 20000.0;
    double mean = 0.0;
    for (const double d : draws) mean += d;
    mean /= static_cast<double>(draws.size());
    for (const double d : draws) s.values.push_back(d - mean);
    return s;
}

}  // namespace

TEST_CASE("circular mean") {
    const std::vector<AngleRad> plain = {AngleRad(0.4), AngleRad(0.5), AngleRad(0.6)};
    CHECK(circular_mean(plain).value() == doctest::Approx(0.5).epsilon(1e-14));

    // Straddling the wrap point: 89.9 deg and 0.1 deg average to 0/90.
    const std::vector<AngleRad> wrap = {AngleRad::from_degrees(89.9), AngleRad::from_degrees(0.1)};
    const AngleRad mean = circular_mean(wrap);
    CHECK(std::fabs(wrapped_deviation(mean, AngleRad(0.0))) < 1e-12);

    CHECK_THROWS_AS(circular_mean(std::vector<AngleRad>{}), std::invalid_argument);
}

TEST_CASE("standardization") {
    SUBCASE("identical values map to exact zeros") {
        const std::vector<AngleRad> mles(5, AngleRad(0.7));
        const StandardizedSample s = standardize(mles, 300, 16.0);
        for (const double v : s.values) CHECK(v == 0.0);
        CHECK(s.r == 5);
        CHECK(s.n == 300);
        CHECK(s.theta_bar == AngleRad(0.7));
    }

    SUBCASE("scaled resolution for the full-scale run") {
        const std::vector<AngleRad> mles = {AngleRad(0.1), AngleRad(0.2)};
        const StandardizedSample s = standardize(mles, 300, 16.0);
        CHECK(s.delta == doctest::Approx(0.010882796185405307).epsilon(1e-12));
    }

    SUBCASE("symmetric pair standardizes symmetrically") {
        const double eps = 1e-3;
        const std::vector<AngleRad> mles = {AngleRad(0.3 + eps), AngleRad(0.3 - eps)};
        const StandardizedSample s = standardize(mles, 300, 16.0);
        const double scale = std::sqrt(300.0 * 16.0);
        CHECK(s.values[0] == doctest::Approx(scale * eps).epsilon(1e-12));
        CHECK(s.values[1] == doctest::Approx(-scale * eps).epsilon(1e-12));
    }

    SUBCASE("centering leaves a vanishing mean") {
        NormalDraws draw(99);
        std::vector<AngleRad> mles;
        for (int i = 0; i < 500; ++i) {
            mles.push_back(AngleRad(1.0 + 0.0144 * draw()));
        }
        const StandardizedSample s = standardize(mles, 300, 16.0);
        double sum = 0.0;
        for (const double v : s.values) sum += v;
        CHECK(std::fabs(sum / s.r) < 1e-9);
    }

    SUBCASE("preconditions") {
        const std::vector<AngleRad> one = {AngleRad(0.1)};
        CHECK_THROWS_AS(standardize(one, 300, 16.0), std::invalid_argument);
        const std::vector<AngleRad> two = {AngleRad(0.1), AngleRad(0.2)};
        CHECK_THROWS_AS(standardize(two, 0, 16.0), std::invalid_argument);
        CHECK_THROWS_AS(standardize(two, 300, 0.0), std::invalid_argument);
    }
}

TEST_CASE("bin layout") {
    const BinSpec bins = BinSpec::standard_normal(0.0);
    CHECK(bins.count() == 23);
    REQUIRE(bins.inner_edges.size() == 22);
    CHECK(bins.inner_edges.front() == doctest::Approx(-3.5).epsilon(1e-15));
    CHECK(bins.inner_edges.back() == doctest::Approx(3.5).epsilon(1e-15));
    for (std::size_t k = 1; k < bins.inner_edges.size(); ++k) {
        CHECK(bins.inner_edges[k] > bins.inner_edges[k - 1]);
        CHECK(bins.inner_edges[k] - bins.inner_edges[k - 1] ==
              doctest::Approx(7.0 / 21.0).epsilon(1e-13));
    }
    const BinSpec shifted = BinSpec::standard_normal(1e-6);
    for (std::size_t k = 0; k < shifted.inner_edges.size(); ++k) {
        CHECK(shifted.inner_edges[k] - bins.inner_edges[k] ==
              doctest::Approx(1e-6).epsilon(1e-9));
    }
}

TEST_CASE("bin counting") {
    const BinSpec bins = BinSpec::standard_normal(1e-7);
    StandardizedSample s;
    s.r = 4;
    s.values = {0.0, -100.0, 3.6, 3.6};
    const std::vector<int> counts = bin_counts(s, bins);
    REQUIRE(counts.size() == 23);
    CHECK(counts[11] == 1);  // central bin
    CHECK(counts[0] == 1);   // left tail
    CHECK(counts[22] == 2);  // right tail
    int total = 0;
    for (const int c : counts) total += c;
    CHECK(total == s.r);
}

TEST_CASE("normal bin probabilities") {
    const BinSpec bins = BinSpec::standard_normal(0.0);
    const std::vector<double> probs = normal_bin_probs(bins);
    REQUIRE(probs.size() == 23);
    double total = 0.0;
    for (const double p : probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(probs[0] == doctest::Approx(2.3262907903552504e-4).epsilon(1e-10));
    CHECK(probs[11] == doctest::Approx(0.13236766522180731).epsilon(1e-10));
    for (int b = 0; b <= 22; ++b) {
        CHECK(std::fabs(probs[static_cast<std::size_t>(b)] -
                        probs[static_cast<std::size_t>(22 - b)]) < 1e-15);
    }
}

TEST_CASE("goodness-of-fit decision") {
    SUBCASE("normal data accepts, uniform data rejects") {
        NormalDraws draw(4242);
        std::vector<double> normal_draws;
        for (int i = 0; i < 500; ++i) normal_draws.push_back(draw());
        const GofResult good = gof_test(centered_sample(normal_draws), 0.10);
        CHECK(good.dof == 21);
        CHECK(good.critical_value == doctest::Approx(29.615089436182733).epsilon(1e-9));
        CHECK(good.accept);
        CHECK(good.statistic < good.critical_value);
        int total = 0;
        for (const int c : good.counts) total += c;
        CHECK(total == 500);
        double expected_total = 0.0;
        for (const double e : good.expected) expected_total += e;
        CHECK(expected_total == doctest::Approx(500.0).epsilon(1e-10));

        std::mt19937_64 rng(1);
        std::vector<double> uniform_draws;
        for (int i = 0; i < 500; ++i) uniform_draws.push_back(6.0 * uniform_unit(rng) - 3.0);
        const GofResult bad = gof_test(centered_sample(uniform_draws), 0.10);
        CHECK_FALSE(bad.accept);
        CHECK(bad.statistic > bad.critical_value);
    }

    SUBCASE("statistic recomputes from counts and expectations") {
        NormalDraws draw(7);
        std::vector<double> draws;
        for (int i = 0; i < 200; ++i) draws.push_back(draw());
        const GofResult g = gof_test(centered_sample(draws), 0.10);
        double x2 = 0.0;
        for (std::size_t b = 0; b < g.counts.size(); ++b) {
            const double diff = g.counts[b] - g.expected[b];
            x2 += diff * diff / g.expected[b];
        }
        CHECK(g.statistic == doctest::Approx(x2).epsilon(1e-12));
    }

    SUBCASE("decision thresholds match the chi-square quantile") {
        // Magnitude reference: a statistic near 16.8 accepts at 10%, one at
        // 35.0 rejects (critical value 29.615 at dof 21).
        const double critical = chisq_quantile(21, 0.90);
        CHECK(16.8 < critical);
        CHECK(35.0 > critical);
    }

    SUBCASE("small samples are rejected") {
        NormalDraws draw(3);
        std::vector<double> draws;
        for (int i = 0; i < 49; ++i) draws.push_back(draw());
        CHECK_THROWS_AS(gof_test(centered_sample(draws), 0.10), std::invalid_argument);
    }
}

TEST_CASE("gof calibration against a true standard normal source") {
    int accepted = 0;
    for (int rep = 0; rep < 100; ++rep) {
        NormalDraws draw(mix_seed(1000, static_cast<std::uint64_t>(rep)));
        std::vector<double> draws;
        for (int i = 0; i < 500; ++i) draws.push_back(draw());
        if (gof_test(centered_sample(draws), 0.10).accept) ++accepted;
    }
    CHECK(accepted >= 80);  // expected about 90 of 100
    CHECK(accepted <= 99);
}

TEST_CASE("t interval for plain values") {
    const std::vector<double> data = {1.0, 2.0, 3.0, 4.0};
    const ConfidenceInterval ci = t_mean_interval(data, 0.90);
    CHECK(ci.target == ConfidenceInterval::Target::mean);
    const double center = 0.5 * (ci.lower + ci.upper);
    const double half = 0.5 * (ci.upper - ci.lower);
    CHECK(center == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(half == doctest::Approx(1.5190895650934913).epsilon(1e-9));

    const std::vector<double> one = {1.0};
    CHECK_THROWS_AS(t_mean_interval(one, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(t_mean_interval(data, 1.0), std::invalid_argument);
}

TEST_CASE("mean interval on the circle, reported in degrees") {
    SUBCASE("degenerate sample gives a zero-width interval") {
        const std::vector<AngleRad> mles(10, AngleRad::from_degrees(30.0));
        const ConfidenceInterval ci = mean_ci(mles, 0.90);
        CHECK(ci.lower == doctest::Approx(30.0).epsilon(1e-12));
        CHECK(ci.upper == doctest::Approx(30.0).epsilon(1e-12));
    }

    SUBCASE("half width matches the full-scale spread") {
        // 500 values alternating +/- 0.828 deg about 30 deg: the 90% half
        // width reproduces the +/-0.06 deg column scale.
        const double dev_deg = 0.828;
        std::vector<AngleRad> mles;
        for (int i = 0; i < 500; ++i) {
            const double sign = i % 2 == 0 ? 1.0 : -1.0;
            mles.push_back(AngleRad::from_degrees(30.0 + sign * dev_deg));
        }
        const ConfidenceInterval ci = mean_ci(mles, 0.90);
        const double half = 0.5 * (ci.upper - ci.lower);
        const double sd_deg = dev_deg * std::sqrt(500.0 / 499.0);
        CHECK(half ==
              doctest::Approx(1.6479129840597128 * sd_deg / std::sqrt(500.0)).epsilon(1e-9));
        CHECK(half == doctest::Approx(0.061).epsilon(0.02));
        CHECK(0.5 * (ci.lower + ci.upper) == doctest::Approx(30.0).epsilon(1e-9));
    }

    SUBCASE("ensembles straddling the wrap point keep a sensible center") {
        std::vector<AngleRad> mles;
        for (int i = 0; i < 100; ++i) {
            const double sign = i % 2 == 0 ? 1.0 : -1.0;
            mles.push_back(AngleRad::from_degrees(sign * 0.5));
        }
        const ConfidenceInterval ci = mean_ci(mles, 0.90);
        const double center = 0.5 * (ci.lower + ci.upper);
        // Either representative of the wrap point is acceptable.
        const double folded = std::fmod(center + 360.0, 90.0);
        CHECK(std::min(folded, 90.0 - folded) < 1e-9);
    }
}

TEST_CASE("variance interval") {
    SUBCASE("full-scale interval brackets 1/J") {
        // Sample built to have unbiased variance exactly 0.0625/300 rad^2.
        const int r = 500;
        const double target_var = 0.0625 / 300.0;
        const double dev = std::sqrt(target_var * (r - 1.0) / r);
        std::vector<AngleRad> mles;
        for (int i = 0; i < r; ++i) {
            const double sign = i % 2 == 0 ? 1.0 : -1.0;
            mles.push_back(AngleRad(1.0 + sign * dev));
        }
        const ConfidenceInterval ci = variance_ci(mles, 300, 0.90);
        CHECK(ci.target == ConfidenceInterval::Target::variance);
        CHECK(ci.lower == doctest::Approx(0.056491445063531409).epsilon(1e-9));
        CHECK(ci.upper == doctest::Approx(0.069584074071459782).epsilon(1e-9));
        CHECK(ci.lower < 0.0625);
        CHECK(ci.upper > 0.0625);
    }

    SUBCASE("interval contains the point estimate and tightens with level") {
        NormalDraws draw(11);
        std::vector<AngleRad> mles;
        for (int i = 0; i < 200; ++i) mles.push_back(AngleRad(0.9 + 0.01 * draw()));
        double point = 0.0;
        {
            // n * unbiased variance, recomputed by hand.
            const AngleRad mean = circular_mean(mles);
            double sum = 0.0, sum_sq = 0.0;
            for (const AngleRad a : mles) {
                const double d = wrapped_deviation(a, mean);
                sum += d;
                sum_sq += d * d;
            }
            const double mean_dev = sum / 200.0;
            point = 300.0 * (sum_sq - 200.0 * mean_dev * mean_dev) / 199.0;
        }
        // Containment holds at conventional levels. It breaks as level -> 0
        // because the chi-square quantiles collapse onto the median, which
        // sits slightly below r-1 for a right-skewed distribution.
        for (const double level : {0.99, 0.9, 0.5, 0.2}) {
            const ConfidenceInterval ci = variance_ci(mles, 300, level);
            CHECK(ci.lower <= point * (1.0 + 1e-12));
            CHECK(ci.upper >= point * (1.0 - 1e-12));
        }
        double previous_width = std::numeric_limits<double>::infinity();
        for (const double level : {0.99, 0.9, 0.5, 0.1, 0.001}) {
            const ConfidenceInterval ci = variance_ci(mles, 300, level);
            const double width = ci.upper - ci.lower;
            CHECK(width < previous_width);
            previous_width = width;
        }
        // At a vanishing level both endpoints sit within half a percent of
        // the point estimate.
        const ConfidenceInterval tight = variance_ci(mles, 300, 0.001);
        CHECK(std::fabs(tight.lower / point - 1.0) < 0.005);
        CHECK(std::fabs(tight.upper / point - 1.0) < 0.005);
    }

    SUBCASE("preconditions") {
        const std::vector<AngleRad> two = {AngleRad(0.1), AngleRad(0.2)};
        CHECK_THROWS_AS(variance_ci(two, 0, 0.9), std::invalid_argument);
        const std::vector<AngleRad> one = {AngleRad(0.1)};
        CHECK_THROWS_AS(variance_ci(one, 300, 0.9), std::invalid_argument);
    }
}

TEST_CASE("gof statistic is invariant under a common shift when re-centered") {
    NormalDraws draw(2718);
    std::vector<AngleRad> mles;
    for (int i = 0; i < 500; ++i) {
        mles.push_back(AngleRad(1.3 + 0.0144 * draw()));
    }
    const GofResult base = gof_test(standardize(mles, 300, 16.0), 0.10);

    for (const double shift : {0.3, -0.9, 0.27}) {  // the last crosses the wrap point
        std::vector<AngleRad> shifted;
        for (const AngleRad a : mles) shifted.push_back(AngleRad(a.value() + shift));
        const GofResult moved = gof_test(standardize(shifted, 300, 16.0), 0.10);
        CHECK(moved.counts == base.counts);
        CHECK(moved.statistic == doctest::Approx(base.statistic).epsilon(1e-9));
    }
}

TEST_CASE("mean interval coverage calibration") {
    const double true_mean = 0.3;  // rad
    int covered = 0;
    for (int rep = 0; rep < 200; ++rep) {
        NormalDraws draw(mix_seed(31415, static_cast<std::uint64_t>(rep)));
        std::vector<AngleRad> mles;
        for (int i = 0; i < 100; ++i) {
            mles.push_back(AngleRad(true_mean + 0.01 * draw()));
        }
        const ConfidenceInterval ci = mean_ci(mles, 0.90);
        const double true_mean_deg = true_mean * 180.0 / std::numbers::pi;
        if (ci.lower <= true_mean_deg && true_mean_deg <= ci.upper) ++covered;
    }
    CHECK(covered >= 170);  // binomial 3 sigma band around 180
    CHECK(covered <= 192);
}
