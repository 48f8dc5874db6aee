#pragma once

namespace rel {

/// Standard normal CDF, evaluated through erfc so both tails keep full
/// precision (never 1 minus a quantity near 1).
double normal_cdf(double z);

/// Upper-tail probability P(Z > z) = normal_cdf(-z).
double normal_ccdf(double z);

/// Standard normal density.
double normal_pdf(double z);

/// Inverse of normal_cdf on [0, 1). Returns -infinity at u = 0; throws
/// std::domain_error outside [0, 1).
double normal_quantile(double u);

}  // namespace rel
