#pragma once

namespace aqse {

/// Standard normal CDF via the error function.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion below the a+1 crossover, continued fraction above.
double regularized_gamma_p(double a, double x);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double regularized_beta(double x, double a, double b);

/// Chi-square CDF with dof >= 1 degrees of freedom; 0 for x <= 0.
double chisq_cdf(int dof, double x);

/// Student t CDF with dof >= 1 degrees of freedom.
double t_cdf(int dof, double x);

/// Quantiles by monotone bisection on the CDF, resolved to ~1e-10.
/// Throw std::invalid_argument unless dof >= 1 and p is in (0,1).
double chisq_quantile(int dof, double p);
double t_quantile(int dof, double p);

}  // namespace aqse
