#include "mdiqkd/key_rate.hpp"
#include "mdiqkd/channel_model.hpp"
#include "mdiqkd/decoy_analysis.hpp"
#include "mdiqkd/finite_size.hpp"
#include "mdiqkd/math_util.hpp"

#include <algorithm>
#include <cmath>

namespace mdiqkd {

KeyRateResult key_rate(const ProtocolParams& params, const ChannelPair& ch,
                       const DeviceParams& dev, const Analysis& analysis)
{
    KeyRateResult res;
    res.analysis = analysis;

    ObservedStatistics st = simulate_statistics(
        params, ch, dev, analysis.finite ? analysis.N : 0.0);
    BoundedStatistics bst =
        apply_bounds(st, analysis.finite ? analysis.gamma : 0.0);

    res.Q_ss_Z = st.z.Q;
    res.E_ss_Z = st.z.Q > 0.0 ? st.z.T / st.z.Q : 0.0;

    res.bounds = decoy_bounds(params, bst);

    double ec_qber;
    if (analysis.finite && st.z.Q > 0.0)
        ec_qber = std::min(bst.z.T_upper / bst.z.Q_upper, 0.5);
    else
        ec_qber = std::min(res.E_ss_Z, 0.5);
    res.ec_term = params.A.P_s * params.B.P_s * dev.f * st.z.Q *
                  binary_entropy(ec_qber);

    const double p11 = params.A.s * std::exp(-params.A.s) * params.B.s *
                       std::exp(-params.B.s);
    res.pa_term = params.A.P_s * params.B.P_s * p11 * res.bounds.Y11_lower *
                  (1.0 - binary_entropy(res.bounds.e11_upper));

    res.feasible = res.bounds.feasible;
    res.R = std::max(res.pa_term - res.ec_term, 0.0);
    if (res.bounds.Y11_lower <= 0.0)
        res.R = 0.0;
    return res;
}

} // namespace mdiqkd
