#include "mdiqkd/channel_model.hpp"
#include "mdiqkd/decoy_analysis.hpp"
#include "mdiqkd/finite_size.hpp"
#include "mdiqkd/key_rate.hpp"
#include "mdiqkd/math_util.hpp"
#include "mdiqkd/optimizer.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace mdiqkd;

namespace {

const DeviceParams dev{};
const Analysis finite11 = Analysis::finite_size(1e11, gamma_from_epsilon(1e-7));

ProtocolParams example_params(Variant v)
{
    ProtocolParams p;
    p.variant = v;
    p.A = {0.662, 0.522, 0.100, 0.0, 0.600, 0.033, 0.255, 0.0};
    p.B = {0.202, 0.058, 0.011, 0.0, 0.600, 0.031, 0.256, 0.0};
    if (v == Variant::nine_intensity) {
        p.A.nu2 = p.A.nu * 0.3;
        p.B.nu2 = p.B.nu * 0.3;
        p.A.P_nu2 = p.B.P_nu2 = 0.05;
    }
    return p;
}

void bm_key_rate(benchmark::State& state)
{
    ChannelPair ch = make_channel(60, 10, dev);
    ProtocolParams p = example_params(Variant::seven_intensity);
    for (auto _ : state)
        benchmark::DoNotOptimize(key_rate(p, ch, dev, finite11).R);
}
BENCHMARK(bm_key_rate);

void bm_decoy_lp(benchmark::State& state)
{
    ChannelPair ch = make_channel(60, 10, dev);
    ProtocolParams p = example_params(Variant::nine_intensity);
    BoundedStatistics st = apply_bounds(simulate_statistics(p, ch, dev, 1e11),
                                        gamma_from_epsilon(1e-7));
    for (auto _ : state)
        benchmark::DoNotOptimize(decoy_bounds_lp(p, st).Y11_lower);
}
BENCHMARK(bm_decoy_lp);

void bm_line_search(benchmark::State& state)
{
    auto f = [](const std::vector<double>& v) {
        return v[0] * std::exp(-v[0]);
    };
    for (auto _ : state) {
        std::vector<double> v{0.5};
        benchmark::DoNotOptimize(line_search(f, v, 0, 0.0, 10.0));
    }
}
BENCHMARK(bm_line_search);

void bm_optimize_seven(benchmark::State& state)
{
    ChannelPair ch = make_channel(60, 10, dev);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            optimize(ch, dev, finite11, Variant::seven_intensity, false).rate);
}
BENCHMARK(bm_optimize_seven)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
