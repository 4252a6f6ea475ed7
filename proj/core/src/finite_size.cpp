#include "mdiqkd/finite_size.hpp"

#include <algorithm>
#include <cmath>

namespace mdiqkd {

static void bound_one(double v, double N_ij, double gamma, double& up,
                      double& lo)
{
    if (N_ij <= 0.0 || gamma <= 0.0) {
        up = lo = v;
        return;
    }
    if (N_ij * v < 1.0) {
        lo = 0.0;
        up = (1.0 + gamma * gamma) / N_ij;
        return;
    }
    double d = gamma * std::sqrt(v / N_ij);
    up = v + d;
    lo = std::max(v - d, 0.0);
}

BoundEntry bound_entry(const StatEntry& e, double gamma)
{
    BoundEntry b;
    b.Q = e.Q;
    b.T = e.T;
    bound_one(e.Q, e.N_ij, gamma, b.Q_upper, b.Q_lower);
    bound_one(e.T, e.N_ij, gamma, b.T_upper, b.T_lower);
    return b;
}

BoundedStatistics apply_bounds(const ObservedStatistics& st, double gamma)
{
    BoundedStatistics b;
    b.z = bound_entry(st.z, gamma);
    b.na = st.na;
    b.nb = st.nb;
    b.x.reserve(st.x.size());
    for (const auto& e : st.x)
        b.x.push_back(bound_entry(e, gamma));
    return b;
}

BoundedStatistics degenerate_bounds(const ObservedStatistics& st)
{
    return apply_bounds(st, 0.0);
}

} // namespace mdiqkd
