#include "mdiqkd/network.hpp"
#include "mdiqkd/math_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mdiqkd {

RateMatrix plan(const StarNetwork& net, PlanStrategy strategy, int threads)
{
    const int n = (int)net.nodes.size();
    if (n < 2)
        throw std::invalid_argument("plan: need at least 2 nodes");

    RateMatrix mat;
    mat.strategy = strategy;
    for (const auto& nd : net.nodes)
        mat.ids.push_back(nd.id);
    mat.entries.resize(size_t(n) * n);

    double longest = 0.0;
    for (const auto& nd : net.nodes)
        longest = std::max(longest, nd.distance_km);

    Analysis analysis = net.N > 0.0
                            ? Analysis::finite_size(
                                  net.N, gamma_from_epsilon(net.dev.eps))
                            : Analysis::asymptotic();

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++)
            pairs.emplace_back(i, j);

    auto solve_pair = [&](int i, int j) {
        double LA = net.nodes[i].distance_km;
        double LB = net.nodes[j].distance_km;
        bool symmetric = strategy != PlanStrategy::asymmetric_free;
        if (strategy == PlanStrategy::symmetric_add_fibre)
            LA = LB = longest;
        ChannelPair ch = make_channel(LA, LB, net.dev);
        OptimizationReport rep =
            optimize(ch, net.dev, analysis, Variant::seven_intensity,
                     symmetric);
        mat.entries[size_t(i) * n + j] = rep.result;
        mat.entries[size_t(j) * n + i] = rep.result;
    };

    if (threads <= 1) {
        for (auto [i, j] : pairs)
            solve_pair(i, j);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int t = 0; t < threads; t++) {
            pool.emplace_back([&] {
                for (;;) {
                    size_t k = next.fetch_add(1);
                    if (k >= pairs.size())
                        return;
                    solve_pair(pairs[k].first, pairs[k].second);
                }
            });
        }
        for (auto& th : pool)
            th.join();
    }
    return mat;
}

StarNetwork load_network(const std::string& path, double N,
                         const DeviceParams& dev)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open network file: " + path);
    StarNetwork net;
    net.N = N;
    net.dev = dev;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ss(line);
        std::string id, dist;
        if (!std::getline(ss, id, ',') || !std::getline(ss, dist)) {
            throw std::runtime_error("bad network line " +
                                     std::to_string(lineno));
        }
        // tolerate a header row
        if (lineno == 1 && id == "id")
            continue;
        NetworkNode nd;
        nd.id = id;
        try {
            nd.distance_km = std::stod(dist);
        } catch (...) {
            throw std::runtime_error("bad distance on line " +
                                     std::to_string(lineno));
        }
        if (nd.distance_km < 0.0)
            throw std::runtime_error("negative distance on line " +
                                     std::to_string(lineno));
        for (const auto& other : net.nodes)
            if (other.id == nd.id)
                throw std::runtime_error("duplicate node id: " + nd.id);
        net.nodes.push_back(nd);
    }
    return net;
}

} // namespace mdiqkd
