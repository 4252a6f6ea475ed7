#pragma once

#include "mdiqkd/key_rate.hpp"
#include "mdiqkd/types.hpp"

#include <functional>
#include <vector>

namespace mdiqkd {

// Polar re-parameterization of the decoy intensities: both decoy pairs share
// one angle, so every evaluated point sits on the ridge mu_A/mu_B ==
// nu_A/nu_B exactly.
struct PolarParams {
    double s_A = 0, s_B = 0;
    double r_mu = 0, r_nu = 0, r_nu2 = 0; // r_nu2 only for nine_intensity
    double theta = 0;                     // shared angle, (0, pi/2)
    double P_sA = 0, P_muA = 0, P_nuA = 0, P_nu2A = 0;
    double P_sB = 0, P_muB = 0, P_nuB = 0, P_nu2B = 0;
};

// Throws std::invalid_argument when the input is off-ridge (ratio mismatch
// beyond 1e-9 relative).
PolarParams to_polar(const ProtocolParams& p);
ProtocolParams from_polar(const PolarParams& pp, Variant variant,
                          bool symmetric);

struct OptimizationReport {
    ProtocolParams best;
    std::vector<double> coords; // raw coordinate vector (see ParamSpace)
    double rate = 0.0;          // clamped rate at the optimum
    double raw = 0.0;           // pa - ec, may be negative
    int cycles = 0;
    long evaluations = 0;
    bool converged = false;
    KeyRateResult result; // key_rate re-evaluated at best
};

// Coordinate layout for a given (variant, symmetric) combination, plus the
// mapping from a coordinate vector to protocol parameters with per-point
// feasibility clipping of the search intervals.
struct ParamSpace {
    Variant variant;
    bool symmetric;

    int dims() const;
    ProtocolParams expand(const std::vector<double>& v) const;
    // search interval for one axis given the rest of the current point
    void axis_domain(const std::vector<double>& v, int axis, double& lo,
                     double& hi) const;
    std::vector<double> seed(const ChannelPair& ch) const;
    std::vector<double> pack(const ProtocolParams& p) const;
};

// Iterative coarse-to-fine scan along one axis: 100 samples, then 10 between
// the maximizer's neighbours, to depth 4 or absolute improvement < 1e-12.
// Ties break toward the smaller coordinate. Returns the best objective value
// and updates v[axis].
double line_search(const std::function<double(const std::vector<double>&)>& f,
                   std::vector<double>& v, int axis, double lo, double hi,
                   long* evals = nullptr);

OptimizationReport coordinate_descent(const ChannelPair& ch,
                                      const DeviceParams& dev,
                                      const Analysis& analysis,
                                      const ParamSpace& space,
                                      std::vector<double> start);

struct Strategy {
    int starts = 1;           // 1 = single_start (heuristic seed only)
    unsigned long long seed = 1; // RNG seed for the extra random starts
};

Strategy default_strategy(Variant v);

OptimizationReport optimize(const ChannelPair& ch, const DeviceParams& dev,
                            const Analysis& analysis, Variant variant,
                            bool symmetric, const Strategy& strategy = {});

// Warm-started variant: seeds coordinate descent from a previous optimum in
// addition to the heuristic seed. Used by distance sweeps near cutoffs, where
// cold starts sit on a zero plateau.
OptimizationReport optimize_warm(const ChannelPair& ch,
                                 const DeviceParams& dev,
                                 const Analysis& analysis, Variant variant,
                                 bool symmetric,
                                 const std::vector<double>& warm_start,
                                 const Strategy& strategy = {});

// Distance continuation: when a cold start lands on the zero plateau for an
// asymmetric channel, re-approach the target by growing the longer arm out
// from the symmetric point at the shorter length in 5 km steps, warm-starting
// each step from the previous optimum. Returns the better of the chained and
// plain results.
OptimizationReport optimize_chained(const ChannelPair& ch,
                                    const DeviceParams& dev,
                                    const Analysis& analysis, Variant variant,
                                    bool symmetric,
                                    const Strategy& strategy = {});

} // namespace mdiqkd
