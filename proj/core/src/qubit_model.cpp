#include "aqse/qubit_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aqse {

double wrap_half_pi(double radians) {
    double w = std::fmod(radians, kHalfPi);
    if (w < 0.0) w += kHalfPi;
    // fmod is exact, but the correction above can round up to pi/2 itself.
    if (w >= kHalfPi) w = 0.0;
    return w;
}

double wrap_deviation(double difference) {
    double d = std::fmod(difference, kHalfPi);  // (-pi/2, pi/2)
    if (d > kQuarterPi) d -= kHalfPi;
    if (d <= -kQuarterPi) d += kHalfPi;
    return d;
}

double wrapped_deviation(AngleRad a, AngleRad b) {
    return wrap_deviation(a.value() - b.value());
}

HermitianMatrix2 operator*(const HermitianMatrix2& a, const HermitianMatrix2& b) {
    return {a.hh * b.hh + a.hv * b.vh, a.hh * b.hv + a.hv * b.vv,
            a.vh * b.hh + a.vv * b.vh, a.vh * b.hv + a.vv * b.vv};
}

HermitianMatrix2 operator+(const HermitianMatrix2& a, const HermitianMatrix2& b) {
    return {a.hh + b.hh, a.hv + b.hv, a.vh + b.vh, a.vv + b.vv};
}

HermitianMatrix2 operator-(const HermitianMatrix2& a, const HermitianMatrix2& b) {
    return {a.hh - b.hh, a.hv - b.hv, a.vh - b.vh, a.vv - b.vv};
}

HermitianMatrix2 operator*(double s, const HermitianMatrix2& a) {
    return {s * a.hh, s * a.hv, s * a.vh, s * a.vv};
}

double max_abs(const HermitianMatrix2& a) {
    return std::max(std::max(std::fabs(a.hh), std::fabs(a.hv)),
                    std::max(std::fabs(a.vh), std::fabs(a.vv)));
}

HermitianMatrix2 BinaryPovm::element(int outcome) const {
    if (outcome != 1 && outcome != 2) {
        throw std::invalid_argument("BinaryPovm::element: outcome must be 1 or 2, got " +
                                    std::to_string(outcome));
    }
    HermitianMatrix2 proj{xi_h * xi_h, xi_h * xi_v, xi_v * xi_h, xi_v * xi_v};
    if (outcome == 1) return proj;
    return HermitianMatrix2{1.0, 0.0, 0.0, 1.0} - proj;
}

double LueEstimator::estimate(int outcome) const {
    if (outcome != 1 && outcome != 2) {
        throw std::invalid_argument("LueEstimator::estimate: outcome must be 1 or 2");
    }
    return outcome == 1 ? center.value() + offset : center.value() - offset;
}

PureQubitState state_of(AngleRad theta) {
    const double phi_half = 2.0 * theta.value();  // phi = 4 theta
    return {std::cos(phi_half), std::sin(phi_half)};
}

HermitianMatrix2 density_of(AngleRad theta) {
    const PureQubitState psi = state_of(theta);
    return {psi.amplitude_h * psi.amplitude_h, psi.amplitude_h * psi.amplitude_v,
            psi.amplitude_v * psi.amplitude_h, psi.amplitude_v * psi.amplitude_v};
}

HermitianMatrix2 density_derivative(AngleRad theta) {
    // rho = [[cos^2 2t, cos 2t sin 2t], [., sin^2 2t]]; differentiate in t.
    const double s = std::sin(4.0 * theta.value());
    const double c = std::cos(4.0 * theta.value());
    return {-2.0 * s, 2.0 * c, 2.0 * c, 2.0 * s};
}

BinaryPovm povm_of(AngleRad theta_hat) {
    const double a = 2.0 * theta_hat.value() + kQuarterPi;
    return {std::cos(a), std::sin(a), theta_hat};
}

double outcome_probability(int outcome, AngleRad theta, AngleRad theta_hat) {
    if (outcome != 1 && outcome != 2) {
        throw std::invalid_argument("outcome_probability: outcome must be 1 or 2, got " +
                                    std::to_string(outcome));
    }
    const double u = 2.0 * (theta_hat.value() - theta.value()) + kQuarterPi;
    const double c = std::cos(u);
    const double p1 = c * c;
    return outcome == 1 ? p1 : 1.0 - p1;
}

HermitianMatrix2 sld_operator(AngleRad theta) {
    // For a pure-state family rho' rho + rho rho' = rho', so L = 2 rho'
    // solves the defining equation.
    return 2.0 * density_derivative(theta);
}

double quantum_fisher_information() {
    return 16.0;
}

double classical_fisher_information(AngleRad theta, AngleRad theta_hat) {
    const double p1 = outcome_probability(1, theta, theta_hat);
    const double p2 = 1.0 - p1;
    const double u = 2.0 * wrapped_deviation(theta_hat, theta) + kQuarterPi;
    const double s = std::sin(2.0 * u);
    // Settings within ~1e-12 rad of a blind point leave one outcome with
    // probability below ~1e-24; the quotient is meaningless there, so treat
    // the whole neighborhood as degenerate rather than only exact zeros.
    if (p1 <= 0.0 || p2 <= 0.0 || std::fabs(s) < 2e-12) {
        throw std::domain_error(
            "classical_fisher_information: measurement is blind at this setting "
            "(outcome probability 0 or 1)");
    }
    // dp1/dtheta = 2 sin 2u and p1 p2 = sin^2(2u)/4; this form avoids the
    // cancellation in p1*(1-p1) near the blind settings.
    const double slope = 2.0 * s;
    return slope * slope / (0.25 * s * s);
}

LueEstimator lue_estimator(AngleRad theta0) {
    // E_theta[estimate] = theta0 - c + 2c p1(theta), and dp1/dtheta = 2 at
    // theta0, so the unit-slope condition 4c = 1 gives c = 1/4.
    return {theta0, 0.25};
}

}  // namespace aqse
