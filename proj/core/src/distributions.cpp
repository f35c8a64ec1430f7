#include "aqse/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aqse {

namespace {

constexpr int kMaxIterations = 500;
const double kEps = std::numeric_limits<double>::epsilon();
const double kTiny = std::numeric_limits<double>::min() / kEps;

void require_dof(int dof, const char* where) {
    if (dof < 1) {
        throw std::invalid_argument(std::string(where) + ": dof must be >= 1, got " +
                                    std::to_string(dof));
    }
}

void require_prob(double p, const char* where) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument(std::string(where) + ": p must be in (0,1), got " +
                                    std::to_string(p));
    }
}

// Lower incomplete gamma by its power series, for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma Q(a,x) by the Lentz continued fraction, for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double beta_continued_fraction(double x, double a, double b) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

// Bisection on a monotone CDF. The bracket is expanded first so callers
// only need a rough upper bound.
template <typename Cdf>
double cdf_bisect(Cdf cdf, double lo, double hi, double p) {
    while (cdf(hi) < p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) {
            throw std::runtime_error("quantile: failed to bracket");
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0) {
        throw std::invalid_argument("regularized_gamma_p: a must be > 0");
    }
    if (x < 0.0) {
        throw std::invalid_argument("regularized_gamma_p: x must be >= 0");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0)) {
        throw std::invalid_argument("regularized_beta: a and b must be > 0");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("regularized_beta: x must be in [0,1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x));
    // The continued fraction converges fast for x below the (a+1)/(a+b+2)
    // crossover; use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) above it.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double chisq_cdf(int dof, double x) {
    require_dof(dof, "chisq_cdf");
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

double t_cdf(int dof, double x) {
    require_dof(dof, "t_cdf");
    const double v = dof;
    const double tail = 0.5 * regularized_beta(v / (v + x * x), 0.5 * v, 0.5);
    return x >= 0.0 ? 1.0 - tail : tail;
}

double chisq_quantile(int dof, double p) {
    require_dof(dof, "chisq_quantile");
    require_prob(p, "chisq_quantile");
    const double hi = dof + 10.0 * std::sqrt(2.0 * dof) + 10.0;
    return cdf_bisect([dof](double x) { return chisq_cdf(dof, x); }, 0.0, hi, p);
}

double t_quantile(int dof, double p) {
    require_dof(dof, "t_quantile");
    require_prob(p, "t_quantile");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -t_quantile(dof, 1.0 - p);
    const double hi = 64.0;
    return cdf_bisect([dof](double x) { return t_cdf(dof, x); }, 0.0, hi, p);
}

}  // namespace aqse
