#include "mdiqkd/types.hpp"

#include <cmath>

namespace mdiqkd {

bool DeviceParams::valid(std::string* why) const
{
    auto fail = [&](const char* msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (Y0 < 0.0 || Y0 >= 1.0)
        return fail("Y0 must be in [0,1)");
    if (eta_d <= 0.0 || eta_d > 1.0)
        return fail("eta_d must be in (0,1]");
    if (e_d < 0.0 || e_d >= 0.5)
        return fail("e_d must be in [0,0.5)");
    if (f < 1.0)
        return fail("f must be >= 1");
    if (eps <= 0.0 || eps >= 1.0)
        return fail("eps must be in (0,1)");
    if (alpha <= 0.0)
        return fail("alpha must be > 0");
    return true;
}

ChannelPair make_channel(double L_A, double L_B, const DeviceParams& dev)
{
    ChannelPair ch;
    ch.L_A = L_A;
    ch.L_B = L_B;
    ch.eta_A = std::pow(10.0, -dev.alpha * L_A / 10.0);
    ch.eta_B = std::pow(10.0, -dev.alpha * L_B / 10.0);
    return ch;
}

std::string variant_name(Variant v)
{
    switch (v) {
    case Variant::six_intensity: return "six_intensity";
    case Variant::seven_intensity: return "seven_intensity";
    case Variant::nine_intensity: return "nine_intensity";
    }
    return "?";
}

int ProtocolParams::decoy_count() const
{
    switch (variant) {
    case Variant::six_intensity: return 2;  // mu, nu
    case Variant::seven_intensity: return 3; // mu, nu, vacuum
    case Variant::nine_intensity: return 4; // mu, nu, nu2, vacuum
    }
    return 0;
}

double ProtocolParams::decoy_intensity(const SideParams& side, int i) const
{
    switch (variant) {
    case Variant::six_intensity:
        return i == 0 ? side.mu : side.nu;
    case Variant::seven_intensity:
        return i == 0 ? side.mu : (i == 1 ? side.nu : 0.0);
    case Variant::nine_intensity:
        return i == 0 ? side.mu : (i == 1 ? side.nu : (i == 2 ? side.nu2 : 0.0));
    }
    return 0.0;
}

double ProtocolParams::decoy_prob(const SideParams& side, int i) const
{
    double rest;
    switch (variant) {
    case Variant::six_intensity:
        return i == 0 ? side.P_mu : side.P_nu;
    case Variant::seven_intensity:
        rest = 1.0 - side.P_s - side.P_mu - side.P_nu;
        return i == 0 ? side.P_mu : (i == 1 ? side.P_nu : rest);
    case Variant::nine_intensity:
        rest = 1.0 - side.P_s - side.P_mu - side.P_nu - side.P_nu2;
        return i == 0 ? side.P_mu
                      : (i == 1 ? side.P_nu : (i == 2 ? side.P_nu2 : rest));
    }
    return 0.0;
}

bool ProtocolParams::valid(std::string* why) const
{
    auto fail = [&](const char* msg) {
        if (why)
            *why = msg;
        return false;
    };
    auto check_side = [&](const SideParams& sd) {
        if (sd.s <= 0.0 || sd.s > 1.0)
            return fail("signal intensity must be in (0,1]");
        if (sd.mu <= 0.0 || sd.mu > 1.0 || sd.nu <= 0.0 || sd.nu >= sd.mu)
            return fail("decoys must satisfy 0 < nu < mu <= 1");
        if (variant == Variant::nine_intensity &&
            (sd.nu2 <= 0.0 || sd.nu2 >= sd.nu))
            return fail("nine_intensity needs 0 < nu2 < nu");
        double psum = sd.P_s + sd.P_mu + sd.P_nu;
        if (variant == Variant::nine_intensity)
            psum += sd.P_nu2;
        if (sd.P_s <= 0.0 || sd.P_mu <= 0.0 || sd.P_nu <= 0.0)
            return fail("probabilities must be positive");
        if (variant == Variant::nine_intensity && sd.P_nu2 <= 0.0)
            return fail("P_nu2 must be positive");
        if (variant == Variant::six_intensity) {
            if (std::fabs(psum - 1.0) > 1e-9)
                return fail("six_intensity probabilities must sum to 1");
        } else if (psum >= 1.0) {
            return fail("probabilities must leave room for vacuum");
        }
        return true;
    };
    if (!check_side(A) || !check_side(B))
        return false;
    if (symmetric) {
        // A and B tied; a loose numeric check is enough here
        if (std::fabs(A.s - B.s) > 1e-12 || std::fabs(A.mu - B.mu) > 1e-12 ||
            std::fabs(A.nu - B.nu) > 1e-12)
            return fail("symmetric constraint violated");
    }
    return true;
}

} // namespace mdiqkd
