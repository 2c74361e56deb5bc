#pragma once

// Scalar special functions used across the library: the standard normal
// law, the Kolmogorov sup-of-bridge distribution and the regularized
// incomplete Beta function with its inverse.

namespace trimkd::special {

// Standard normal cdf, accurate to ~1e-16 absolute (erfc based).
double normal_cdf(double x);

// Standard normal density.
double normal_pdf(double x);

// Inverse of normal_cdf on (0,1). Rational initial guess refined by one
// Halley step; absolute error well below 1e-12.
double normal_quantile(double p);

// Psi(x) = P(sup_{t in [0,1]} |B(t)| <= x) for a Brownian bridge B.
// Alternating theta series for x >= 0.5, Jacobi-transformed series below.
double kolmogorov_cdf(double x);

// Inverse of kolmogorov_cdf on (0,1), by bisection.
double kolmogorov_quantile(double p);

// Regularized incomplete Beta function I_x(a,b), continued-fraction
// evaluation (Lentz).
double reg_inc_beta(double x, double a, double b);

// Inverse of I_x(a,b) in x, by bisection. Absolute error <= 1e-10.
double beta_quantile(double p, double a, double b);

}  // namespace trimkd::special
