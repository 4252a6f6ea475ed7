#pragma once

#include "mdiqkd/channel_model.hpp"
#include "mdiqkd/finite_size.hpp"
#include "mdiqkd/math_util.hpp"
#include "mdiqkd/types.hpp"

#include <cmath>
#include <random>

namespace testutil {

// Independent reference for the true single-photon pair yield and QBER of
// the Bell-state measurement with dark counts (one photon per arm). Used as
// the oracle that every decoy-state bound must respect.
inline std::pair<double, double> single_photon_truth(
    const mdiqkd::ChannelPair& ch, const mdiqkd::DeviceParams& dev)
{
    const double a = ch.eta_A * dev.eta_d;
    const double b = ch.eta_B * dev.eta_d;
    const double pd = dev.Y0;
    const double q = (1 - pd) * (1 - pd);
    const double Y =
        q * (a * b / 2.0 + (2 * a + 2 * b - 3 * a * b) * pd +
             4 * (1 - a) * (1 - b) * pd * pd);
    const double T = 0.5 * Y - (0.5 - dev.e_d) * q * a * b / 2.0;
    return {Y, T / Y};
}

// seven_intensity parameter set with sane defaults; probabilities only
// matter when finite-size pair counts are attached
inline mdiqkd::ProtocolParams seven_params(double s_A, double mu_A,
                                           double nu_A, double s_B,
                                           double mu_B, double nu_B)
{
    mdiqkd::ProtocolParams p;
    p.variant = mdiqkd::Variant::seven_intensity;
    p.A = {s_A, mu_A, nu_A, 0.0, 0.5, 0.05, 0.3, 0.0};
    p.B = {s_B, mu_B, nu_B, 0.0, 0.5, 0.05, 0.3, 0.0};
    return p;
}

// asymptotic bounded statistics for a seven_intensity decoy grid
inline mdiqkd::BoundedStatistics seven_stats(const mdiqkd::ProtocolParams& p,
                                             const mdiqkd::ChannelPair& ch,
                                             const mdiqkd::DeviceParams& dev)
{
    return mdiqkd::degenerate_bounds(
        mdiqkd::simulate_statistics(p, ch, dev, 0.0));
}

} // namespace testutil
