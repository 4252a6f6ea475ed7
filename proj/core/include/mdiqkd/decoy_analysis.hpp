#pragma once

#include "mdiqkd/types.hpp"

namespace mdiqkd {

// Analytic single-photon yield lower bound from the 3x3 (mu, nu, vacuum)
// X-basis grid. Piecewise in the intensity ratios: Case 1 applies when
// mu_A/mu_B <= nu_A/nu_B, Case 2 otherwise; the two branches agree on the
// ridge mu_A/mu_B == nu_A/nu_B. Result clamped to [0,1].
double y11_lower_analytic(double mu_A, double mu_B, double nu_A, double nu_B,
                          const BoundedStatistics& st);

// Analytic single-photon QBER upper bound; the caller supplies the yield
// estimate used in the denominator. Clamped to [0,0.5].
double e11_upper_analytic(double nu_A, double nu_B, double y11_denominator,
                          const BoundedStatistics& st);

// Three-decoy (seven_intensity) bounds. The yield bound uses the fluctuated
// statistics; the QBER bound divides by the yield estimate evaluated on the
// unfluctuated statistics, which is what reproduces the reference rates.
DecoyBounds decoy_bounds_analytic(const ProtocolParams& params,
                                  const BoundedStatistics& st);

// LP bounds for two- or four-decoy protocols (also usable as a cross-check
// for three decoys). Solves a joint program over yields Y_nm and error-yields
// Z_nm = e_nm * Y_nm with Z <= Y; for six_intensity the vacuum photon-number
// rows enter the error-gain constraints as Y/2 exactly (e_n0 = e_0m = 1/2).
DecoyBounds decoy_bounds_lp(const ProtocolParams& params,
                            const BoundedStatistics& st, int n_cut = 10);

DecoyBounds decoy_bounds(const ProtocolParams& params,
                         const BoundedStatistics& st);

} // namespace mdiqkd
