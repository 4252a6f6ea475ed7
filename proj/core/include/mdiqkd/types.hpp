#pragma once

#include <string>
#include <vector>

namespace mdiqkd {

struct DeviceParams {
    double Y0 = 8e-7;    // dark count probability per detector per pulse
    double eta_d = 0.65; // detector efficiency
    double e_d = 0.005;  // misalignment
    double f = 1.16;     // error-correction efficiency
    double eps = 1e-7;   // failure probability for finite-size bounds
    double alpha = 0.2;  // fibre loss, dB/km

    bool valid(std::string* why = nullptr) const;
};

struct ChannelPair {
    double L_A = 0.0, L_B = 0.0; // km
    double eta_A = 1.0, eta_B = 1.0;

    double mismatch() const { return eta_A / eta_B; }
};

ChannelPair make_channel(double L_A, double L_B, const DeviceParams& dev);

enum class Variant { six_intensity, seven_intensity, nine_intensity };

std::string variant_name(Variant v);

struct SideParams {
    double s = 0.0, mu = 0.0, nu = 0.0, nu2 = 0.0;
    double P_s = 0.0, P_mu = 0.0, P_nu = 0.0, P_nu2 = 0.0;
};

struct ProtocolParams {
    Variant variant = Variant::seven_intensity;
    bool symmetric = false; // symmetric constraint (A == B); with
                            // seven_intensity this is the 4-intensity protocol
    SideParams A, B;

    // decoys per side, including vacuum where the variant has one
    int decoy_count() const;
    // decoy i of the given side, ordered mu, nu [, nu2] [, vacuum]
    double decoy_intensity(const SideParams& side, int i) const;
    double decoy_prob(const SideParams& side, int i) const;

    bool valid(std::string* why = nullptr) const;
};

struct StatEntry {
    double Q = 0.0;    // gain
    double T = 0.0;    // error-gain Q*E
    double N_ij = 0.0; // expected pair count; 0 means asymptotic
};

struct ObservedStatistics {
    StatEntry z; // signal pair, Z basis
    int na = 0, nb = 0;
    std::vector<StatEntry> x; // na*nb decoy pairs, row-major
    const StatEntry& xat(int i, int j) const { return x[i * nb + j]; }
    StatEntry& xat(int i, int j) { return x[i * nb + j]; }
};

struct BoundEntry {
    double Q = 0.0, T = 0.0;
    double Q_upper = 0.0, Q_lower = 0.0;
    double T_upper = 0.0, T_lower = 0.0;
};

struct BoundedStatistics {
    BoundEntry z;
    int na = 0, nb = 0;
    std::vector<BoundEntry> x;
    const BoundEntry& xat(int i, int j) const { return x[i * nb + j]; }
    BoundEntry& xat(int i, int j) { return x[i * nb + j]; }
};

enum class BoundMethod { analytic, lp };

struct DecoyBounds {
    double Y11_lower = 0.0;
    double e11_upper = 0.5;
    BoundMethod method = BoundMethod::analytic;
    bool feasible = true;
};

struct Analysis {
    bool finite = false;
    double N = 0.0;
    double gamma = 0.0;

    static Analysis asymptotic() { return {}; }
    static Analysis finite_size(double N, double gamma)
    {
        return {true, N, gamma};
    }
};

struct KeyRateResult {
    double R = 0.0;              // clamped rate, bits per pulse
    double pa_term = 0.0;        // privacy amplification contribution
    double ec_term = 0.0;        // error correction cost
    DecoyBounds bounds;
    double Q_ss_Z = 0.0, E_ss_Z = 0.0;
    Analysis analysis;
    bool feasible = true;

    double raw() const { return pa_term - ec_term; }
};

} // namespace mdiqkd
