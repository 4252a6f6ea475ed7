#include "mdiqkd/channel_model.hpp"
#include "mdiqkd/math_util.hpp"
#include "mdiqkd/types.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace mdiqkd;

namespace {

ChannelPair ch_60_10(const DeviceParams& dev)
{
    return make_channel(60, 10, dev);
}

} // namespace

TEST_CASE("Z basis: vacuum in, zero out")
{
    DeviceParams dev;
    dev.Y0 = 0.0;
    auto [Q, E] = gain_qber_z(0.0, 0.0, make_channel(30, 30, dev), dev);
    CHECK(Q == 0.0);
    CHECK(E == 0.0);
}

TEST_CASE("Z basis QBER reference points at (60, 10)")
{
    DeviceParams dev;
    ChannelPair ch = ch_60_10(dev);
    // signal ratio 3.5 keeps the arriving intensities balanced -> low QBER
    auto [Q1, E1] = gain_qber_z(0.7, 0.2, ch, dev);
    CHECK(E1 == doctest::Approx(0.013).epsilon(0.15));
    // equal signal intensities on an asymmetric channel -> roughly doubled
    auto [Q2, E2] = gain_qber_z(0.2, 0.2, ch, dev);
    CHECK(E2 == doctest::Approx(0.029).epsilon(0.15));
    CHECK(Q1 > 0.0);
    CHECK(Q2 > 0.0);
}

TEST_CASE("negative intensity is a domain error")
{
    DeviceParams dev;
    ChannelPair ch = make_channel(10, 10, dev);
    CHECK_THROWS_AS((void)gain_qber_z(-0.1, 0.2, ch, dev),
                    std::domain_error);
    CHECK_THROWS_AS((void)gain_qber_x(0.1, -0.2, ch, dev),
                    std::domain_error);
}

TEST_CASE("X basis: vacuum pair has zero gain without dark counts")
{
    DeviceParams dev;
    dev.Y0 = 0.0;
    auto [Q, E] = gain_qber_x(0.0, 0.0, make_channel(30, 30, dev), dev);
    CHECK(Q == doctest::Approx(0.0).epsilon(1e-12));
    (void)E;
}

TEST_CASE("X basis QBER: balanced arriving intensities minimize the error")
{
    DeviceParams dev;
    ChannelPair ch = ch_60_10(dev);
    const double mu_B = 0.2;
    const double mu_A_bal = mu_B * ch.eta_B / ch.eta_A; // eta_A mu_A = eta_B mu_B
    auto [Qb, Eb] = gain_qber_x(mu_A_bal, mu_B, ch, dev);
    CHECK(Eb == doctest::Approx(0.2474).epsilon(0.01));
    // sqrt-heuristic ratio instead of the full ratio ~10 -> error near 32%
    auto [Qs, Es] = gain_qber_x(mu_B * 3.16, mu_B, ch, dev);
    CHECK(Es == doctest::Approx(0.3162).epsilon(0.02));
    CHECK(Es > Eb);
    // perturbing off the balanced point raises the error on both sides
    auto [Ql, El] = gain_qber_x(mu_A_bal * 0.5, mu_B, ch, dev);
    auto [Qh, Eh] = gain_qber_x(mu_A_bal * 2.0, mu_B, ch, dev);
    CHECK(El > Eb);
    CHECK(Eh > Eb);
}

TEST_CASE("X basis QBER floors at 25% for small balanced intensities")
{
    DeviceParams dev;
    dev.Y0 = 0.0;
    dev.e_d = 0.0;
    ChannelPair ch = ch_60_10(dev);
    double mu_B = 0.01;
    double mu_A = mu_B * ch.eta_B / ch.eta_A;
    auto [Q, E] = gain_qber_x(mu_A, mu_B, ch, dev);
    CHECK(E == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("ranges: 0 <= E <= 0.5 and 0 <= Q <= 1 on a random grid")
{
    DeviceParams dev;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uL(0, 150), us(0, 1);
    for (int i = 0; i < 200; i++) {
        ChannelPair ch = make_channel(uL(rng), uL(rng), dev);
        double a = us(rng), b = us(rng);
        auto [Qz, Ez] = gain_qber_z(a, b, ch, dev);
        auto [Qx, Ex] = gain_qber_x(a, b, ch, dev);
        CHECK(Qz >= 0.0);
        CHECK(Qz <= 1.0);
        CHECK(Ez >= 0.0);
        CHECK(Ez <= 0.5);
        CHECK(Qx >= 0.0);
        CHECK(Qx <= 1.0);
        CHECK(Ex >= 0.0);
        CHECK(Ex <= 0.5);
    }
}

TEST_CASE("gains are non-decreasing in each intensity")
{
    DeviceParams dev;
    ChannelPair ch = make_channel(40, 20, dev);
    double prev_z = -1, prev_x = -1;
    for (double s = 0.05; s <= 1.0; s += 0.05) {
        double Qz = gain_qber_z(s, 0.3, ch, dev).first;
        double Qx = gain_qber_x(s, 0.3, ch, dev).first;
        CHECK(Qz >= prev_z);
        CHECK(Qx >= prev_x);
        prev_z = Qz;
        prev_x = Qx;
    }
}

TEST_CASE("swapping the two arms leaves gain and QBER unchanged")
{
    DeviceParams dev;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uL(0, 120), us(0.01, 1);
    for (int i = 0; i < 50; i++) {
        double LA = uL(rng), LB = uL(rng), a = us(rng), b = us(rng);
        ChannelPair ch = make_channel(LA, LB, dev);
        ChannelPair sw = make_channel(LB, LA, dev);
        auto z1 = gain_qber_z(a, b, ch, dev);
        auto z2 = gain_qber_z(b, a, sw, dev);
        CHECK(z1.first == doctest::Approx(z2.first).epsilon(1e-13));
        CHECK(z1.second == doctest::Approx(z2.second).epsilon(1e-13));
        auto x1 = gain_qber_x(a, b, ch, dev);
        auto x2 = gain_qber_x(b, a, sw, dev);
        CHECK(x1.first == doctest::Approx(x2.first).epsilon(1e-13));
        CHECK(x1.second == doctest::Approx(x2.second).epsilon(1e-13));
    }
}

TEST_CASE("Z basis error is insensitive where the X basis error is not")
{
    DeviceParams dev;
    ChannelPair ch = ch_60_10(dev);
    const double s_B = 0.2;
    const double s_A_bal = s_B * ch.eta_B / ch.eta_A;
    double max_ez = 0, max_ex = 0;
    for (int k = 0; k <= 20; k++) {
        double s_A = s_A_bal * std::pow(10.0, -0.5 + k / 20.0);
        max_ez = std::max(max_ez, gain_qber_z(s_A, s_B, ch, dev).second);
        max_ex = std::max(max_ex, gain_qber_x(s_A, s_B, ch, dev).second);
    }
    CHECK(max_ez < 0.05);
    CHECK(max_ex > 0.30);
}

TEST_CASE("second-order model agrees at small arriving intensities")
{
    // oracle: the dark-count-free second-order expansion. The leading
    // truncation error is ~0.75*(arriving A + arriving B), so the 1.5%/0.005
    // tolerances below are checked with arriving intensities <= 0.01.
    DeviceParams dev;
    dev.Y0 = 0.0;
    const double ed = dev.e_d;
    const double eps = 2 * ed - ed * ed;
    for (double LA : {30.0, 50.0, 80.0}) {
        for (double LB : {30.0, 50.0, 80.0}) {
            ChannelPair ch = make_channel(LA, LB, dev);
            double x = ch.eta_A / ch.eta_B;
            for (double sA : {0.005, 0.02, 0.05}) {
                for (double sB : {0.005, 0.02, 0.05}) {
                    double a = ch.eta_A * dev.eta_d * sA;
                    double b = ch.eta_B * dev.eta_d * sB;
                    if (std::max(a, b) > 0.01)
                        continue;
                    auto [Q, E] = gain_qber_z(sA, sB, ch, dev);
                    double c = ch.eta_B * dev.eta_d;
                    double gain2 =
                        c * c / 2.0 *
                        (2 * x * sA * sB +
                         (sB * sB + x * x * sA * sA) * eps) /
                        2.0;
                    double qber2 =
                        (sB + x * sA) * (sB + x * sA) * eps /
                        (2.0 * (2 * x * sA * sB +
                                (sB * sB + x * x * sA * sA) * eps));
                    CHECK(Q == doctest::Approx(gain2).epsilon(0.015));
                    CHECK(std::fabs(E - qber2) < 0.005);
                }
            }
        }
    }
}

TEST_CASE("simulate_statistics table shapes")
{
    DeviceParams dev;
    ChannelPair ch = make_channel(30, 20, dev);

    ProtocolParams seven = testutil::seven_params(0.4, 0.3, 0.06, 0.4, 0.3,
                                                  0.06);
    ObservedStatistics st7 = simulate_statistics(seven, ch, dev);
    CHECK(st7.na == 3);
    CHECK(st7.nb == 3);
    CHECK(st7.x.size() == 9);

    ProtocolParams six = seven;
    six.variant = Variant::six_intensity;
    ObservedStatistics st6 = simulate_statistics(six, ch, dev);
    CHECK(st6.x.size() == 4);

    ProtocolParams nine = seven;
    nine.variant = Variant::nine_intensity;
    nine.A.nu2 = nine.B.nu2 = 0.01;
    nine.A.P_nu2 = nine.B.P_nu2 = 0.05;
    ObservedStatistics st9 = simulate_statistics(nine, ch, dev);
    CHECK(st9.x.size() == 16);
}

TEST_CASE("simulate_statistics attaches pair counts")
{
    DeviceParams dev;
    ChannelPair ch = make_channel(30, 20, dev);
    ProtocolParams p = testutil::seven_params(0.4, 0.3, 0.06, 0.4, 0.3, 0.06);
    const double N = 1e11;
    ObservedStatistics st = simulate_statistics(p, ch, dev, N);
    CHECK(st.z.N_ij == doctest::Approx(N * p.A.P_s * p.B.P_s));
    for (int i = 0; i < st.na; i++)
        for (int j = 0; j < st.nb; j++)
            CHECK(st.xat(i, j).N_ij ==
                  doctest::Approx(N * p.decoy_prob(p.A, i) *
                                  p.decoy_prob(p.B, j)));
    // asymptotic run carries no counts
    ObservedStatistics st0 = simulate_statistics(p, ch, dev, 0.0);
    CHECK(st0.z.N_ij == 0.0);
}
