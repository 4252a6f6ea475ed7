#pragma once

#include "mdiqkd/types.hpp"

namespace mdiqkd {

// Secret key rate per pulse:
//   R = P_sA P_sB { (s_A e^-s_A)(s_B e^-s_B) Y11_L [1 - h2(e11_U)]
//                   - f Q_ss h2(E_ss) }
// clamped at 0. For finite-size analysis the error-correction QBER uses the
// upper-bounded Z statistics (T_upper / Q_upper).
KeyRateResult key_rate(const ProtocolParams& params, const ChannelPair& ch,
                       const DeviceParams& dev, const Analysis& analysis);

} // namespace mdiqkd
