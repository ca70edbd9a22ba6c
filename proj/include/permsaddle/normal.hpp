#pragma once

namespace permsaddle {

// Standard normal density and distribution function.
double norm_pdf(double x);
double norm_cdf(double x);

// Inverse of norm_cdf for p in (0, 1). Rational initial approximation
// refined by one Newton step on the CDF; absolute error below 1e-12 away
// from the extreme tails. Antisymmetric: norm_quantile(1 - p) evaluates
// through the same lower-tail path, so paired quantiles negate exactly.
double norm_quantile(double p);

}  // namespace permsaddle
