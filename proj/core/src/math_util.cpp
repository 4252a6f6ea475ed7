#include "mdiqkd/math_util.hpp"

#include <cmath>
#include <stdexcept>

namespace mdiqkd {

double bessel_i0(double z)
{
    // I0(z) = sum (z^2/4)^k / (k!)^2, term ratio stopping at 1e-14 relative
    double q = z * z / 4.0;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; k++) {
        term *= q / (double(k) * double(k));
        sum += term;
        if (term < 1e-14 * sum)
            break;
    }
    return sum;
}

double binary_entropy(double p)
{
    if (p < 0.0 || p > 1.0)
        throw std::domain_error("binary_entropy: p outside [0,1]");
    if (p <= 0.0 || p >= 1.0)
        return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double erfc_inv(double y)
{
    if (y <= 0.0 || y >= 2.0)
        throw std::domain_error("erfc_inv: argument outside (0,2)");
    if (y == 1.0)
        return 0.0;
    // map to the normal quantile: erfc_inv(y) = -probit(y/2)/sqrt(2)
    // rational starting guess (Beasley-Springer / Moro style), then Newton
    double p = y / 2.0;
    bool flip = false;
    if (p > 0.5) {
        p = 1.0 - p;
        flip = true;
    }
    double t = std::sqrt(-2.0 * std::log(p));
    // Abramowitz & Stegun 26.2.23 rational approximation
    double num = 2.515517 + t * (0.802853 + t * 0.010328);
    double den = 1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308));
    double z = t - num / den; // upper-tail normal quantile of p
    double x = z / std::sqrt(2.0); // erfc(x) ~= 2p
    // Newton polish on erfc(x) - 2p = 0; d/dx erfc = -2/sqrt(pi) exp(-x^2)
    for (int it = 0; it < 4; it++) {
        double fx = std::erfc(x) - 2.0 * p;
        double dfx = -2.0 / std::sqrt(M_PI) * std::exp(-x * x);
        x -= fx / dfx;
    }
    return flip ? -x : x;
}

double gamma_from_epsilon(double eps)
{
    if (eps <= 0.0 || eps >= 1.0)
        throw std::domain_error("gamma_from_epsilon: eps outside (0,1)");
    return std::sqrt(2.0) * erfc_inv(eps);
}

} // namespace mdiqkd
