#include "mdiqkd/channel_model.hpp"
#include "mdiqkd/math_util.hpp"

#include <cmath>
#include <stdexcept>

namespace mdiqkd {

std::pair<double, double> gain_qber_z(double s_A, double s_B,
                                      const ChannelPair& ch,
                                      const DeviceParams& dev)
{
    if (s_A < 0.0 || s_B < 0.0)
        throw std::domain_error("gain_qber_z: negative intensity");
    const double pd = dev.Y0;
    const double a = ch.eta_A * dev.eta_d * s_A;
    const double b = ch.eta_B * dev.eta_d * s_B;
    const double mup = a + b;
    const double xp = std::sqrt(a * b) / 2.0;
    const double omp = 1.0 - pd;

    // correct-click term: both arms produce a detection
    const double Qc = 2.0 * omp * omp * std::exp(-mup / 2.0) *
                      (1.0 - omp * std::exp(-a / 2.0)) *
                      (1.0 - omp * std::exp(-b / 2.0));
    // dark-count-assisted term
    const double Qe =
        2.0 * pd * omp * omp * std::exp(-mup / 2.0) *
        (bessel_i0(2.0 * xp) - omp * std::exp(-mup / 2.0));
    // misalignment cross-talk: photons leaking into the wrong output pair
    const double epsd = 2.0 * dev.e_d - dev.e_d * dev.e_d;
    const double Qm =
        epsd * omp * omp * std::exp(-mup / 2.0) * (a * a + b * b) / 4.0;

    const double Q = Qc + Qm + Qe;
    const double T = dev.e_d * Qc + 0.5 * Qm + 0.5 * Qe;
    double E = (Q <= 0.0) ? 0.0 : T / Q;
    if (E < 0.0)
        E = 0.0;
    if (E > 0.5)
        E = 0.5;
    return {Q, E};
}

std::pair<double, double> gain_qber_x(double mu_A, double mu_B,
                                      const ChannelPair& ch,
                                      const DeviceParams& dev)
{
    if (mu_A < 0.0 || mu_B < 0.0)
        throw std::domain_error("gain_qber_x: negative intensity");
    const double pd = dev.Y0;
    const double a = ch.eta_A * dev.eta_d * mu_A;
    const double b = ch.eta_B * dev.eta_d * mu_B;
    const double mup = a + b;
    const double xp = std::sqrt(a * b) / 2.0;

    const double y = (1.0 - pd) * std::exp(-mup / 4.0);
    const double Q =
        2.0 * y * y *
        (1.0 + 2.0 * y * y - 4.0 * y * bessel_i0(xp) + bessel_i0(2.0 * xp));
    const double e0 = 0.5;
    const double T =
        e0 * Q - 2.0 * (e0 - dev.e_d) * y * y * (bessel_i0(2.0 * xp) - 1.0);
    double E = (Q <= 0.0) ? 0.0 : T / Q;
    if (E < 0.0)
        E = 0.0;
    if (E > 0.5)
        E = 0.5;
    return {Q, E};
}

ObservedStatistics simulate_statistics(const ProtocolParams& params,
                                       const ChannelPair& ch,
                                       const DeviceParams& dev, double N)
{
    ObservedStatistics st;
    auto [Qz, Ez] = gain_qber_z(params.A.s, params.B.s, ch, dev);
    st.z.Q = Qz;
    st.z.T = Qz * Ez;
    if (N > 0.0)
        st.z.N_ij = N * params.A.P_s * params.B.P_s;

    const int d = params.decoy_count();
    st.na = d;
    st.nb = d;
    st.x.resize(size_t(d) * d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            double ia = params.decoy_intensity(params.A, i);
            double ib = params.decoy_intensity(params.B, j);
            auto [Q, E] = gain_qber_x(ia, ib, ch, dev);
            StatEntry& e = st.xat(i, j);
            e.Q = Q;
            e.T = Q * E;
            if (N > 0.0)
                e.N_ij = N * params.decoy_prob(params.A, i) *
                         params.decoy_prob(params.B, j);
        }
    }
    return st;
}

} // namespace mdiqkd
