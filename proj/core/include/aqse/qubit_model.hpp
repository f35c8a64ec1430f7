#pragma once

#include <numbers>

namespace aqse {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// Wraps an arbitrary angle (radians) into the canonical range [0, pi/2).
double wrap_half_pi(double radians);

/// An angle on the parameter circle of circumference pi/2 (half-wave-plate
/// angle, radians). The stored value is always wrapped into [0, pi/2);
/// two angles describe the same polarization state iff they wrap equal.
class AngleRad {
  public:
    AngleRad() = default;
    explicit AngleRad(double radians) : value_(wrap_half_pi(radians)) {}

    static AngleRad from_degrees(double degrees) {
        return AngleRad(degrees * std::numbers::pi / 180.0);
    }

    double value() const { return value_; }
    double degrees() const { return value_ * 180.0 / std::numbers::pi; }

    friend bool operator==(AngleRad a, AngleRad b) { return a.value_ == b.value_; }
    friend bool operator!=(AngleRad a, AngleRad b) { return a.value_ != b.value_; }

  private:
    double value_ = 0.0;
};

/// Signed deviation a-b on the parameter circle, folded into (-pi/4, pi/4].
double wrapped_deviation(AngleRad a, AngleRad b);

/// Same folding for a raw radian difference.
double wrap_deviation(double difference);

/// Linear polarization state in the {|H>, |V>} basis. The amplitudes are
/// real for this one-parameter family: (cos 2theta, sin 2theta).
struct PureQubitState {
    double amplitude_h = 1.0;
    double amplitude_v = 0.0;

    double norm_squared() const {
        return amplitude_h * amplitude_h + amplitude_v * amplitude_v;
    }
};

/// 2x2 Hermitian matrix; real-symmetric throughout this model.
struct HermitianMatrix2 {
    double hh = 0.0;
    double hv = 0.0;
    double vh = 0.0;
    double vv = 0.0;

    double trace() const { return hh + vv; }
};

HermitianMatrix2 operator*(const HermitianMatrix2& a, const HermitianMatrix2& b);
HermitianMatrix2 operator+(const HermitianMatrix2& a, const HermitianMatrix2& b);
HermitianMatrix2 operator-(const HermitianMatrix2& a, const HermitianMatrix2& b);
HermitianMatrix2 operator*(double s, const HermitianMatrix2& a);

/// Largest absolute entry, used as a matrix max-norm in checks.
double max_abs(const HermitianMatrix2& a);

/// Binary projective measurement {|xi><xi|, I - |xi><xi|} with
/// <xi| = (cos(2 theta_hat + pi/4), sin(2 theta_hat + pi/4)).
struct BinaryPovm {
    double xi_h = 0.0;
    double xi_v = 0.0;
    AngleRad setting;  // the angle the pair was optimized for

    /// M(1) = |xi><xi|, M(2) = I - |xi><xi|.
    HermitianMatrix2 element(int outcome) const;
};

/// Locally unbiased estimator map at a center angle: outcome 1 maps to
/// center + offset, outcome 2 to center - offset. estimate() returns the
/// raw (unwrapped) radian value; the unbiasedness conditions are local
/// statements on the real line.
struct LueEstimator {
    AngleRad center;
    double offset = 0.0;  // radians; 1/4 for this model

    double estimate(int outcome) const;
};

/// State preparation: theta -> (cos 2theta, sin 2theta).
PureQubitState state_of(AngleRad theta);

/// Density matrix |psi(theta)><psi(theta)|.
HermitianMatrix2 density_of(AngleRad theta);

/// Analytic derivative of the density matrix with respect to theta.
HermitianMatrix2 density_derivative(AngleRad theta);

/// Measurement pair optimized for a hypothesized angle.
BinaryPovm povm_of(AngleRad theta_hat);

/// Born probability of outcome x in {1,2} when the state is prepared at
/// theta and measured with povm_of(theta_hat):
///   p(1) = cos^2(2(theta_hat - theta) + pi/4),  p(2) = 1 - p(1).
/// p(2) is the exact floating-point complement so the pair always sums to 1.
/// Throws std::invalid_argument for outcome labels outside {1,2}.
double outcome_probability(int outcome, AngleRad theta, AngleRad theta_hat);

/// Symmetric logarithmic derivative L = 2 * d rho/d theta (pure-state model),
/// the Hermitian solution of d rho/d theta = (L rho + rho L)/2.
HermitianMatrix2 sld_operator(AngleRad theta);

/// Tr[rho L^2]; a constant 16 for this family, independent of theta.
double quantum_fisher_information();

/// Fisher information of the binary outcome density at (theta, theta_hat):
/// (dp1/dtheta)^2 / (p1 p2). Equals 16 at every setting where the outcome
/// is informative. Throws std::domain_error when p1 is 0 or 1 (the
/// measurement is blind there and the information is undefined).
double classical_fisher_information(AngleRad theta, AngleRad theta_hat);

/// Best locally unbiased estimator at theta0: the unit-slope condition
/// d/dtheta E_theta[estimate] = 1 fixes offset = 1/4, which attains
/// variance 1/16 = 1/J at theta0.
LueEstimator lue_estimator(AngleRad theta0);

}  // namespace aqse
