#pragma once

#include "mdiqkd/optimizer.hpp"
#include "mdiqkd/types.hpp"

#include <string>
#include <vector>

namespace mdiqkd {

struct NetworkNode {
    std::string id;
    double distance_km = 0.0; // to the untrusted relay
};

struct StarNetwork {
    std::vector<NetworkNode> nodes;
    double N = 0.0; // data size per pairing; 0 = asymptotic
    DeviceParams dev;
};

enum class PlanStrategy { symmetric_add_fibre, symmetric_direct, asymmetric_free };

struct RateMatrix {
    PlanStrategy strategy;
    std::vector<std::string> ids;
    // row-major n x n; diagonal entries are zero-initialized and unused
    std::vector<KeyRateResult> entries;
    const KeyRateResult& at(int i, int j) const
    {
        return entries[size_t(i) * ids.size() + j];
    }
};

// All-pairs key rates around one untrusted relay. symmetric_add_fibre pads
// every channel to the longest node distance; symmetric_direct ties the two
// parameter vectors on the raw distances; asymmetric_free runs the free
// 7-intensity optimizer per pair. threads > 1 runs pair optimizations
// concurrently.
RateMatrix plan(const StarNetwork& net, PlanStrategy strategy,
                int threads = 1);

// node file format: CSV lines "id,distance_km" (header optional)
StarNetwork load_network(const std::string& path, double N,
                         const DeviceParams& dev);

} // namespace mdiqkd
