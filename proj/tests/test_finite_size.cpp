#include "mdiqkd/channel_model.hpp"
#include "mdiqkd/finite_size.hpp"
#include "mdiqkd/math_util.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mdiqkd;

TEST_CASE("bound_entry: zero gamma collapses to point values")
{
    StatEntry e{1e-5, 2e-7, 1e10};
    BoundEntry b = bound_entry(e, 0.0);
    CHECK(b.Q_upper == e.Q);
    CHECK(b.Q_lower == e.Q);
    CHECK(b.T_upper == e.T);
    CHECK(b.T_lower == e.T);
}

TEST_CASE("bound_entry: standard-error width")
{
    const double gamma = 5.3;
    StatEntry e{1e-5, 2e-7, 1e12};
    BoundEntry b = bound_entry(e, gamma);
    double dq = gamma * std::sqrt(e.Q / e.N_ij);
    CHECK(b.Q_upper == doctest::Approx(e.Q + dq).epsilon(1e-12));
    CHECK(b.Q_lower == doctest::Approx(e.Q - dq).epsilon(1e-12));
}

TEST_CASE("bound width shrinks by sqrt(2) when the sample doubles")
{
    const double gamma = 5.3;
    StatEntry e{1e-5, 2e-7, 1e12};
    BoundEntry b1 = bound_entry(e, gamma);
    e.N_ij *= 2.0;
    BoundEntry b2 = bound_entry(e, gamma);
    double w1 = b1.Q_upper - b1.Q_lower;
    double w2 = b2.Q_upper - b2.Q_lower;
    CHECK(w1 / w2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("expected-count floor below one event")
{
    const double gamma = 5.3;
    StatEntry e{1e-9, 0.0, 1e8}; // N_ij * Q = 0.1 expected events
    BoundEntry b = bound_entry(e, gamma);
    CHECK(b.Q_lower == 0.0);
    CHECK(b.Q_upper ==
          doctest::Approx((1.0 + gamma * gamma) / e.N_ij).epsilon(1e-12));
}

TEST_CASE("bounds always bracket the observation")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uq(0.0, 1e-3), un(1e4, 1e12);
    const double gamma = gamma_from_epsilon(1e-7);
    for (int i = 0; i < 500; i++) {
        StatEntry e;
        e.Q = uq(rng);
        e.T = e.Q * 0.3;
        e.N_ij = un(rng);
        BoundEntry b = bound_entry(e, gamma);
        CHECK(b.Q_lower >= 0.0);
        CHECK(b.Q_lower <= e.Q);
        CHECK(b.Q_upper >= e.Q);
        CHECK(b.T_lower >= 0.0);
        CHECK(b.T_lower <= e.T);
        CHECK(b.T_upper >= e.T);
    }
}

TEST_CASE("relative width vanishes as the sample grows")
{
    const double gamma = 5.3;
    StatEntry e{1e-4, 1e-6, 1e10};
    double prev = 1e9;
    for (double n = 1e10; n <= 1e16; n *= 100) {
        e.N_ij = n;
        BoundEntry b = bound_entry(e, gamma);
        double rel = (b.Q_upper - b.Q_lower) / e.Q;
        CHECK(rel < prev);
        prev = rel;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("apply_bounds: asymptotic statistics pass through unchanged")
{
    DeviceParams dev;
    ChannelPair ch = make_channel(40, 20, dev);
    ProtocolParams p = testutil::seven_params(0.4, 0.3, 0.06, 0.4, 0.3, 0.06);
    ObservedStatistics st = simulate_statistics(p, ch, dev, 0.0);
    BoundedStatistics bst = apply_bounds(st, 5.3);
    CHECK(bst.z.Q_upper == st.z.Q);
    CHECK(bst.z.Q_lower == st.z.Q);
    for (int i = 0; i < bst.na; i++) {
        for (int j = 0; j < bst.nb; j++) {
            CHECK(bst.xat(i, j).Q_upper == st.xat(i, j).Q);
            CHECK(bst.xat(i, j).T_lower == st.xat(i, j).T);
        }
    }
}

TEST_CASE("apply_bounds: every entry gets its own pair count")
{
    DeviceParams dev;
    ChannelPair ch = make_channel(40, 20, dev);
    ProtocolParams p = testutil::seven_params(0.4, 0.3, 0.06, 0.4, 0.3, 0.06);
    const double gamma = 5.3;
    ObservedStatistics st = simulate_statistics(p, ch, dev, 1e11);
    BoundedStatistics bst = apply_bounds(st, gamma);
    for (int i = 0; i < bst.na; i++) {
        for (int j = 0; j < bst.nb; j++) {
            const StatEntry& o = st.xat(i, j);
            const BoundEntry& b = bst.xat(i, j);
            CHECK(b.Q == o.Q);
            if (o.N_ij * o.Q >= 1.0) {
                double dq = gamma * std::sqrt(o.Q / o.N_ij);
                CHECK(b.Q_upper == doctest::Approx(o.Q + dq).epsilon(1e-12));
            } else {
                CHECK(b.Q_lower == 0.0);
            }
        }
    }
}
