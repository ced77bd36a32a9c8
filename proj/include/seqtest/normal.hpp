#pragma once

namespace seqtest {

// Standard normal distribution. The cdf and survival function are built on
// std::erfc so both tails keep full relative precision.
double normal_pdf(double z);
double normal_cdf(double z);
double normal_sf(double z);

// Inverse of normal_cdf for p in (0, 1). Throws std::domain_error otherwise.
double normal_quantile(double p);

// Upper quantile z_a with P(Z > z_a) = a. Accurate for tiny a, where
// normal_quantile(1 - a) would lose precision forming 1 - a.
double normal_upper_quantile(double a);

}  // namespace seqtest
