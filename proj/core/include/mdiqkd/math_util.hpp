#pragma once

namespace mdiqkd {

// modified Bessel function of the first kind, order 0, by power series.
// Arguments in this codebase are small (< 5) so the series converges fast.
double bessel_i0(double z);

// binary entropy in bits, h2(0)=h2(1)=0
double binary_entropy(double p);

// inverse complementary error function, |error| < 1e-9 on (0,2)
double erfc_inv(double y);

// two-sided Gaussian quantile: number of standard deviations such that the
// total tail mass outside +-gamma is eps
double gamma_from_epsilon(double eps);

} // namespace mdiqkd
