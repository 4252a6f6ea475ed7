#pragma once

#include "mdiqkd/types.hpp"

#include <utility>

namespace mdiqkd {

// Second-order, dark-count-free scaling model. The key rate factorizes as
// R = (eta_B^2 eta_d^2 / 2) * G(x, s_A, s_B) with x = eta_A/eta_B.
double g_function(double x, double s_A, double s_B, double e_d, double f);

// E_ss_Z of the same second-order model (depends on x and the intensities).
double g_model_qber(double x, double s_A, double s_B, double e_d);

// max over s of R with s_A = s_B = s (the symmetric-intensity strategy)
double asymptotic_rate_symmetric(double eta_A, double eta_B,
                                 const DeviceParams& dev);

// max over (s_A, s_B) independently
double asymptotic_rate_optimal(double eta_A, double eta_B,
                               const DeviceParams& dev);

// critical mismatch values beyond which the symmetric-intensity rate is zero;
// returns {x_min, x_max}. Throws std::runtime_error when no key is possible
// even at x = 1.
std::pair<double, double> cutoff_mismatch(const DeviceParams& dev);

// single-photon reference rate R_SP = P11 * eta_A * eta_B * [1 - 2 h2(e11)],
// clamped at 0
double single_photon_rate(double eta_A, double eta_B, double e11,
                          double pair_probability);

} // namespace mdiqkd
