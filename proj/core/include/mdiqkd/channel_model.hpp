#pragma once

#include "mdiqkd/types.hpp"

#include <utility>

namespace mdiqkd {

// Z-basis (signal) gain and QBER for intensities s_A, s_B.
std::pair<double, double> gain_qber_z(double s_A, double s_B,
                                      const ChannelPair& ch,
                                      const DeviceParams& dev);

// X-basis (decoy) gain and QBER for intensities mu_A, mu_B.
std::pair<double, double> gain_qber_x(double mu_A, double mu_B,
                                      const ChannelPair& ch,
                                      const DeviceParams& dev);

// Fill the statistics table for a protocol: one Z entry for the signal pair,
// one X entry per decoy pair. N = 0 means asymptotic (no pair counts).
ObservedStatistics simulate_statistics(const ProtocolParams& params,
                                       const ChannelPair& ch,
                                       const DeviceParams& dev, double N = 0.0);

} // namespace mdiqkd
