#include "mdiqkd/asymptotic.hpp"
#include "mdiqkd/math_util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdiqkd {

double g_model_qber(double x, double s_A, double s_B, double e_d)
{
    const double eps = 2.0 * e_d - e_d * e_d;
    const double num = (s_B + x * s_A) * (s_B + x * s_A) * eps;
    const double den =
        2.0 * (2.0 * x * s_A * s_B + (s_B * s_B + x * x * s_A * s_A) * eps);
    return den > 0.0 ? num / den : 0.0;
}

double g_function(double x, double s_A, double s_B, double e_d, double f)
{
    const double eps = 2.0 * e_d - e_d * e_d;
    const double E = g_model_qber(x, s_A, s_B, e_d);
    const double pa = x * s_A * s_B * std::exp(-(s_A + s_B)) *
                      (1.0 - binary_entropy(e_d - e_d * e_d / 2.0));
    const double ec =
        (2.0 * x * s_A * s_B + (s_B * s_B + x * x * s_A * s_A) * eps) / 2.0 *
        f * binary_entropy(std::min(E, 0.5));
    return pa - ec;
}

namespace {

// simple 1-D coarse-to-fine maximization, same scheme as the line search
double scan_max(const std::function<double(double)>& f, double lo, double hi)
{
    double bestx = lo, bestval = f(lo);
    double a = lo, b = hi;
    int n = 100;
    for (int depth = 0; depth < 5; depth++) {
        int k = 0;
        double kval = bestval;
        double kx = bestx;
        for (int i = 0; i < n; i++) {
            double xx = a + (b - a) * i / double(n - 1);
            double val = f(xx);
            if (val > kval) {
                kval = val;
                kx = xx;
                k = i;
            }
        }
        if (kval > bestval) {
            bestval = kval;
            bestx = kx;
        }
        double step = (b - a) / double(n - 1);
        a = std::max(lo, bestx - step);
        b = std::min(hi, bestx + step);
        n = 12;
    }
    return bestx;
}

double max_g_symmetric(double x, const DeviceParams& dev)
{
    auto g = [&](double s) { return g_function(x, s, s, dev.e_d, dev.f); };
    return g(scan_max(g, 1e-4, 1.0));
}

} // namespace

double asymptotic_rate_symmetric(double eta_A, double eta_B,
                                 const DeviceParams& dev)
{
    const double x = eta_A / eta_B;
    const double g = max_g_symmetric(x, dev);
    return std::max(0.0, eta_B * eta_B * dev.eta_d * dev.eta_d / 2.0 * g);
}

double asymptotic_rate_optimal(double eta_A, double eta_B,
                               const DeviceParams& dev)
{
    const double x = eta_A / eta_B;
    // the equivalent intensity is x*s_A, so allow s_A above 1 when x < 1
    const double hiA = std::max(1.0, 1.5 / x);
    double s_A = std::min(0.65 / x, hiA), s_B = 0.65;
    double g = 0.0;
    for (int cycle = 0; cycle < 20; cycle++) {
        s_A = scan_max(
            [&](double s) { return g_function(x, s, s_B, dev.e_d, dev.f); },
            1e-4, hiA);
        s_B = scan_max(
            [&](double s) { return g_function(x, s_A, s, dev.e_d, dev.f); },
            1e-4, 1.0);
        double gn = g_function(x, s_A, s_B, dev.e_d, dev.f);
        if (std::fabs(gn - g) <= 1e-9 * std::fabs(gn) && cycle >= 2)
            break;
        g = gn;
    }
    return std::max(0.0, eta_B * eta_B * dev.eta_d * dev.eta_d / 2.0 * g);
}

std::pair<double, double> cutoff_mismatch(const DeviceParams& dev)
{
    if (dev.e_d <= 0.0)
        throw std::runtime_error("cutoff_mismatch: no cutoff without "
                                 "misalignment (E_ss_Z is identically 0)");
    if (max_g_symmetric(1.0, dev) <= 0.0)
        throw std::runtime_error("cutoff_mismatch: no key even at x = 1");

    auto bisect_root = [&](double lo, double hi) {
        // G > 0 at lo, G <= 0 at hi (or vice versa for lo < 1)
        for (int it = 0; it < 200; it++) {
            double mid = std::sqrt(lo * hi); // geometric: x lives on a ratio
            if (max_g_symmetric(mid, dev) > 0.0)
                lo = mid;
            else
                hi = mid;
            if (hi / lo - 1.0 < 1e-5)
                break;
        }
        return std::sqrt(lo * hi);
    };

    double hi = 2.0;
    while (max_g_symmetric(hi, dev) > 0.0) {
        hi *= 2.0;
        if (hi > 1e6)
            throw std::runtime_error("cutoff_mismatch: no cutoff below 1e6");
    }
    double x_max = bisect_root(1.0, hi);

    double lo = 0.5;
    while (max_g_symmetric(lo, dev) > 0.0) {
        lo *= 0.5;
        if (lo < 1e-6)
            throw std::runtime_error("cutoff_mismatch: no cutoff above 1e-6");
    }
    // reuse the same bisection with the roles of the endpoints swapped
    double a = lo, b = 1.0;
    for (int it = 0; it < 200; it++) {
        double mid = std::sqrt(a * b);
        if (max_g_symmetric(mid, dev) > 0.0)
            b = mid;
        else
            a = mid;
        if (b / a - 1.0 < 1e-5)
            break;
    }
    double x_min = std::sqrt(a * b);
    return {x_min, x_max};
}

double single_photon_rate(double eta_A, double eta_B, double e11,
                          double pair_probability)
{
    if (e11 < 0.0 || e11 > 0.5)
        throw std::domain_error("single_photon_rate: e11 outside [0,0.5]");
    const double factor = 1.0 - 2.0 * binary_entropy(e11);
    return std::max(0.0, pair_probability * eta_A * eta_B * factor);
}

} // namespace mdiqkd
