#include "mdiqkd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mdiqkd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kThetaMin = 0.01;
constexpr double kProbMin = 1e-4;
constexpr double kIntMin = 1e-4;

enum AxisKind {
    AX_S_A,
    AX_S_B,
    AX_R_MU,
    AX_R_NU,
    AX_R_NU2,
    AX_THETA,
    AX_P_SA,
    AX_P_MUA,
    AX_P_NUA,
    AX_P_NU2A,
    AX_P_SB,
    AX_P_MUB,
    AX_P_NUB,
    AX_P_NU2B,
};

std::vector<AxisKind> axes_for(Variant variant, bool symmetric)
{
    std::vector<AxisKind> ax;
    if (symmetric) {
        ax.push_back(AX_S_A);
        ax.push_back(AX_R_MU);
        ax.push_back(AX_R_NU);
        if (variant == Variant::nine_intensity)
            ax.push_back(AX_R_NU2);
        ax.push_back(AX_P_SA);
        ax.push_back(AX_P_MUA);
        if (variant != Variant::six_intensity)
            ax.push_back(AX_P_NUA);
        if (variant == Variant::nine_intensity)
            ax.push_back(AX_P_NU2A);
        return ax;
    }
    ax = {AX_S_A, AX_S_B, AX_R_MU, AX_R_NU};
    if (variant == Variant::nine_intensity)
        ax.push_back(AX_R_NU2);
    ax.push_back(AX_THETA);
    ax.push_back(AX_P_SA);
    ax.push_back(AX_P_MUA);
    if (variant != Variant::six_intensity)
        ax.push_back(AX_P_NUA);
    if (variant == Variant::nine_intensity)
        ax.push_back(AX_P_NU2A);
    ax.push_back(AX_P_SB);
    ax.push_back(AX_P_MUB);
    if (variant != Variant::six_intensity)
        ax.push_back(AX_P_NUB);
    if (variant == Variant::nine_intensity)
        ax.push_back(AX_P_NU2B);
    return ax;
}

struct Decoded {
    double s_A = 0, s_B = 0, r_mu = 0, r_nu = 0, r_nu2 = 0, theta = kPi / 4;
    double P_sA = 0, P_muA = 0, P_nuA = 0, P_nu2A = 0;
    double P_sB = 0, P_muB = 0, P_nuB = 0, P_nu2B = 0;
};

Decoded decode(const ParamSpace& sp, const std::vector<double>& v)
{
    Decoded d;
    auto ax = axes_for(sp.variant, sp.symmetric);
    for (size_t i = 0; i < ax.size(); i++) {
        double val = v[i];
        switch (ax[i]) {
        case AX_S_A: d.s_A = val; break;
        case AX_S_B: d.s_B = val; break;
        case AX_R_MU: d.r_mu = val; break;
        case AX_R_NU: d.r_nu = val; break;
        case AX_R_NU2: d.r_nu2 = val; break;
        case AX_THETA: d.theta = val; break;
        case AX_P_SA: d.P_sA = val; break;
        case AX_P_MUA: d.P_muA = val; break;
        case AX_P_NUA: d.P_nuA = val; break;
        case AX_P_NU2A: d.P_nu2A = val; break;
        case AX_P_SB: d.P_sB = val; break;
        case AX_P_MUB: d.P_muB = val; break;
        case AX_P_NUB: d.P_nuB = val; break;
        case AX_P_NU2B: d.P_nu2B = val; break;
        }
    }
    if (sp.symmetric) {
        d.s_B = d.s_A;
        d.P_sB = d.P_sA;
        d.P_muB = d.P_muA;
        d.P_nuB = d.P_nuA;
        d.P_nu2B = d.P_nu2A;
    }
    if (sp.variant == Variant::six_intensity) {
        d.P_nuA = 1.0 - d.P_sA - d.P_muA;
        d.P_nuB = 1.0 - d.P_sB - d.P_muB;
    }
    return d;
}

} // namespace

int ParamSpace::dims() const
{
    return (int)axes_for(variant, symmetric).size();
}

ProtocolParams ParamSpace::expand(const std::vector<double>& v) const
{
    Decoded d = decode(*this, v);
    ProtocolParams p;
    p.variant = variant;
    p.symmetric = symmetric;
    const double sn = std::sin(d.theta), cs = std::cos(d.theta);
    p.A.s = d.s_A;
    p.B.s = d.s_B;
    p.A.mu = d.r_mu * sn;
    p.B.mu = d.r_mu * cs;
    p.A.nu = d.r_nu * sn;
    p.B.nu = d.r_nu * cs;
    p.A.nu2 = d.r_nu2 * sn;
    p.B.nu2 = d.r_nu2 * cs;
    p.A.P_s = d.P_sA;
    p.A.P_mu = d.P_muA;
    p.A.P_nu = d.P_nuA;
    p.A.P_nu2 = d.P_nu2A;
    p.B.P_s = d.P_sB;
    p.B.P_mu = d.P_muB;
    p.B.P_nu = d.P_nuB;
    p.B.P_nu2 = d.P_nu2B;
    return p;
}

void ParamSpace::axis_domain(const std::vector<double>& v, int axis,
                             double& lo, double& hi) const
{
    Decoded d = decode(*this, v);
    const double maxsc =
        symmetric ? std::sin(kPi / 4)
                  : std::max(std::sin(d.theta), std::cos(d.theta));
    const double rcap = (1.0 - 1e-9) / maxsc;
    auto ax = axes_for(variant, symmetric);
    switch (ax[axis]) {
    case AX_S_A:
    case AX_S_B:
        lo = kIntMin;
        hi = 1.0;
        break;
    case AX_R_MU:
        lo = std::max(kIntMin, d.r_nu + 1e-6);
        hi = rcap;
        break;
    case AX_R_NU:
        lo = variant == Variant::nine_intensity
                 ? std::max(kIntMin, d.r_nu2 + 1e-6)
                 : kIntMin;
        hi = std::min(d.r_mu - 1e-6, rcap);
        break;
    case AX_R_NU2:
        lo = kIntMin;
        hi = d.r_nu - 1e-6;
        break;
    case AX_THETA:
        lo = kThetaMin;
        hi = kPi / 2 - kThetaMin;
        if (d.r_mu > 1.0) {
            lo = std::max(lo, std::acos(1.0 / d.r_mu));
            hi = std::min(hi, std::asin(1.0 / d.r_mu));
        }
        break;
    default: {
        // probability axes: keep the per-side sum below 1 with room for the
        // implicit vacuum (or the implicit P_nu for six_intensity)
        double others = 0.0;
        bool a_side = ax[axis] == AX_P_SA || ax[axis] == AX_P_MUA ||
                      ax[axis] == AX_P_NUA || ax[axis] == AX_P_NU2A;
        double Ps = a_side ? d.P_sA : d.P_sB;
        double Pmu = a_side ? d.P_muA : d.P_muB;
        double Pnu = a_side ? d.P_nuA : d.P_nuB;
        double Pnu2 = a_side ? d.P_nu2A : d.P_nu2B;
        switch (ax[axis]) {
        case AX_P_SA:
        case AX_P_SB: others = Pmu + Pnu + Pnu2; break;
        case AX_P_MUA:
        case AX_P_MUB: others = Ps + Pnu + Pnu2; break;
        case AX_P_NUA:
        case AX_P_NUB: others = Ps + Pmu + Pnu2; break;
        default: others = Ps + Pmu + Pnu; break;
        }
        if (variant == Variant::six_intensity)
            others -= Pnu; // P_nu is implicit there, not a coordinate
        lo = kProbMin;
        hi = 1.0 - others - kProbMin;
        break;
    }
    }
    if (hi < lo)
        hi = lo = std::clamp(v[axis], std::min(lo, hi), std::max(lo, hi));
}

std::vector<double> ParamSpace::seed(const ChannelPair& ch) const
{
    double theta = symmetric ? kPi / 4 : std::atan2(ch.eta_B, ch.eta_A);
    theta = std::clamp(theta, kThetaMin, kPi / 2 - kThetaMin);
    const double m = std::max(std::sin(theta), std::cos(theta));
    Decoded d;
    d.s_A = d.s_B = 0.4;
    d.r_mu = 0.3 / m;
    d.r_nu = 0.06 / m;
    d.r_nu2 = 0.012 / m;
    d.theta = theta;
    d.P_sA = d.P_sB = 0.5;
    d.P_muA = d.P_muB = 0.05;
    d.P_nuA = d.P_nuB = variant == Variant::nine_intensity ? 0.25 : 0.3;
    d.P_nu2A = d.P_nu2B = 0.05;

    std::vector<double> v;
    for (AxisKind k : axes_for(variant, symmetric)) {
        switch (k) {
        case AX_S_A: v.push_back(d.s_A); break;
        case AX_S_B: v.push_back(d.s_B); break;
        case AX_R_MU: v.push_back(d.r_mu); break;
        case AX_R_NU: v.push_back(d.r_nu); break;
        case AX_R_NU2: v.push_back(d.r_nu2); break;
        case AX_THETA: v.push_back(d.theta); break;
        case AX_P_SA: v.push_back(d.P_sA); break;
        case AX_P_MUA: v.push_back(d.P_muA); break;
        case AX_P_NUA: v.push_back(d.P_nuA); break;
        case AX_P_NU2A: v.push_back(d.P_nu2A); break;
        case AX_P_SB: v.push_back(d.P_sB); break;
        case AX_P_MUB: v.push_back(d.P_muB); break;
        case AX_P_NUB: v.push_back(d.P_nuB); break;
        case AX_P_NU2B: v.push_back(d.P_nu2B); break;
        }
    }
    return v;
}

std::vector<double> ParamSpace::pack(const ProtocolParams& p) const
{
    PolarParams pp = to_polar(p);
    std::vector<double> v;
    for (AxisKind k : axes_for(variant, symmetric)) {
        switch (k) {
        case AX_S_A: v.push_back(pp.s_A); break;
        case AX_S_B: v.push_back(pp.s_B); break;
        case AX_R_MU: v.push_back(pp.r_mu); break;
        case AX_R_NU: v.push_back(pp.r_nu); break;
        case AX_R_NU2: v.push_back(pp.r_nu2); break;
        case AX_THETA: v.push_back(pp.theta); break;
        case AX_P_SA: v.push_back(pp.P_sA); break;
        case AX_P_MUA: v.push_back(pp.P_muA); break;
        case AX_P_NUA: v.push_back(pp.P_nuA); break;
        case AX_P_NU2A: v.push_back(pp.P_nu2A); break;
        case AX_P_SB: v.push_back(pp.P_sB); break;
        case AX_P_MUB: v.push_back(pp.P_muB); break;
        case AX_P_NUB: v.push_back(pp.P_nuB); break;
        case AX_P_NU2B: v.push_back(pp.P_nu2B); break;
        }
    }
    return v;
}

PolarParams to_polar(const ProtocolParams& p)
{
    auto ratio_check = [](double a1, double b1, double a2, double b2) {
        double lhs = a1 * b2, rhs = a2 * b1;
        double scale = std::max(std::fabs(lhs), std::fabs(rhs));
        if (scale > 0.0 && std::fabs(lhs - rhs) > 1e-9 * scale)
            throw std::invalid_argument(
                "to_polar: decoy intensities are off-ridge");
    };
    ratio_check(p.A.mu, p.B.mu, p.A.nu, p.B.nu);
    if (p.variant == Variant::nine_intensity)
        ratio_check(p.A.mu, p.B.mu, p.A.nu2, p.B.nu2);

    PolarParams pp;
    pp.s_A = p.A.s;
    pp.s_B = p.B.s;
    pp.theta = std::atan2(p.A.mu, p.B.mu);
    pp.r_mu = std::hypot(p.A.mu, p.B.mu);
    pp.r_nu = std::hypot(p.A.nu, p.B.nu);
    pp.r_nu2 = std::hypot(p.A.nu2, p.B.nu2);
    pp.P_sA = p.A.P_s;
    pp.P_muA = p.A.P_mu;
    pp.P_nuA = p.A.P_nu;
    pp.P_nu2A = p.A.P_nu2;
    pp.P_sB = p.B.P_s;
    pp.P_muB = p.B.P_mu;
    pp.P_nuB = p.B.P_nu;
    pp.P_nu2B = p.B.P_nu2;
    return pp;
}

ProtocolParams from_polar(const PolarParams& pp, Variant variant,
                          bool symmetric)
{
    ProtocolParams p;
    p.variant = variant;
    p.symmetric = symmetric;
    const double sn = std::sin(pp.theta), cs = std::cos(pp.theta);
    p.A = {pp.s_A, pp.r_mu * sn, pp.r_nu * sn, pp.r_nu2 * sn,
           pp.P_sA, pp.P_muA,    pp.P_nuA,    pp.P_nu2A};
    p.B = {pp.s_B, pp.r_mu * cs, pp.r_nu * cs, pp.r_nu2 * cs,
           pp.P_sB, pp.P_muB,    pp.P_nuB,    pp.P_nu2B};
    return p;
}

double line_search(const std::function<double(const std::vector<double>&)>& f,
                   std::vector<double>& v, int axis, double lo, double hi,
                   long* evals)
{
    double bestx = v[axis];
    double bestval = f(v);
    if (evals)
        (*evals)++;
    if (!(hi > lo)) {
        v[axis] = bestx;
        return bestval;
    }
    int n = 100;
    double a = lo, b = hi;
    for (int depth = 0; depth < 4; depth++) {
        std::vector<double> xs(n);
        for (int i = 0; i < n; i++)
            xs[i] = a + (b - a) * i / double(n - 1);
        int k = 0;
        double kval = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; i++) {
            v[axis] = xs[i];
            double val = f(v);
            if (evals)
                (*evals)++;
            if (val > kval) { // strict: first maximizer wins ties
                kval = val;
                k = i;
            }
        }
        if (kval > bestval + 1e-12) {
            bestval = kval;
            bestx = xs[k];
        } else if (depth > 0) {
            break;
        }
        a = xs[std::max(k - 1, 0)];
        b = xs[std::min(k + 1, n - 1)];
        n = 10;
    }
    v[axis] = bestx;
    return bestval;
}

OptimizationReport coordinate_descent(const ChannelPair& ch,
                                      const DeviceParams& dev,
                                      const Analysis& analysis,
                                      const ParamSpace& space,
                                      std::vector<double> start)
{
    OptimizationReport rep;
    long evals = 0;
    auto objective = [&](const std::vector<double>& v) {
        KeyRateResult r = key_rate(space.expand(v), ch, dev, analysis);
        return r.raw();
    };

    std::vector<double> v = std::move(start);
    double R0 = objective(v);
    evals++;
    double R = R0;
    const int dims = space.dims();
    bool converged = false;
    int cycle = 0;
    for (cycle = 1; cycle <= 50; cycle++) {
        for (int axis = 0; axis < dims; axis++) {
            double lo, hi;
            space.axis_domain(v, axis, lo, hi);
            R = line_search(objective, v, axis, lo, hi, &evals);
        }
        if (cycle >= 3 && std::fabs(R - R0) <= 1e-4 * std::fabs(R0)) {
            converged = true;
            break;
        }
        R0 = R;
    }

    rep.coords = v;
    rep.best = space.expand(v);
    rep.result = key_rate(rep.best, ch, dev, analysis);
    rep.rate = rep.result.R;
    rep.raw = rep.result.raw();
    rep.cycles = std::min(cycle, 50);
    rep.evaluations = evals;
    rep.converged = converged;
    return rep;
}

Strategy default_strategy(Variant v)
{
    Strategy s;
    s.starts = (v == Variant::seven_intensity) ? 1 : 20;
    return s;
}

namespace {

OptimizationReport run_starts(const ChannelPair& ch, const DeviceParams& dev,
                              const Analysis& analysis,
                              const ParamSpace& space,
                              const std::vector<std::vector<double>>& seeds,
                              int random_starts, unsigned long long rng_seed)
{
    OptimizationReport best;
    bool have = false;
    long total_evals = 0;
    auto consider = [&](OptimizationReport rep) {
        total_evals += rep.evaluations;
        if (!have || rep.raw > best.raw) {
            best = std::move(rep);
            have = true;
        }
    };
    for (const auto& s : seeds)
        consider(coordinate_descent(ch, dev, analysis, space, s));

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < random_starts; k++) {
        std::vector<double> v = space.seed(ch);
        for (int axis = 0; axis < space.dims(); axis++) {
            double lo, hi;
            space.axis_domain(v, axis, lo, hi);
            v[axis] = lo + uni(rng) * (hi - lo);
        }
        consider(coordinate_descent(ch, dev, analysis, space, v));
    }
    best.evaluations = total_evals;
    return best;
}

} // namespace

OptimizationReport optimize(const ChannelPair& ch, const DeviceParams& dev,
                            const Analysis& analysis, Variant variant,
                            bool symmetric, const Strategy& strategy)
{
    ParamSpace space{variant, symmetric};
    return run_starts(ch, dev, analysis, space, {space.seed(ch)},
                      std::max(strategy.starts - 1, 0), strategy.seed);
}

OptimizationReport optimize_warm(const ChannelPair& ch,
                                 const DeviceParams& dev,
                                 const Analysis& analysis, Variant variant,
                                 bool symmetric,
                                 const std::vector<double>& warm_start,
                                 const Strategy& strategy)
{
    ParamSpace space{variant, symmetric};
    std::vector<std::vector<double>> seeds{space.seed(ch)};
    if ((int)warm_start.size() == space.dims())
        seeds.push_back(warm_start);
    return run_starts(ch, dev, analysis, space, seeds,
                      std::max(strategy.starts - 1, 0), strategy.seed);
}

OptimizationReport optimize_chained(const ChannelPair& ch,
                                    const DeviceParams& dev,
                                    const Analysis& analysis, Variant variant,
                                    bool symmetric, const Strategy& strategy)
{
    OptimizationReport rep =
        optimize(ch, dev, analysis, variant, symmetric, strategy);
    const double L_max = std::max(ch.L_A, ch.L_B);
    const double L_min = std::min(ch.L_A, ch.L_B);
    if (rep.rate > 0.0 || L_max == L_min)
        return rep;

    // grow the longer arm out from the symmetric point at the shorter
    // length; the downward direction would start past the symmetric cutoff
    const bool a_long = ch.L_A > ch.L_B;
    std::vector<double> warm;
    OptimizationReport step;
    double L = L_min;
    for (;;) {
        ChannelPair c = make_channel(a_long ? L : L_min,
                                     a_long ? L_min : L, dev);
        step = optimize_warm(c, dev, analysis, variant, symmetric, warm,
                             {1, strategy.seed});
        if (step.rate > 0.0)
            warm = step.coords;
        if (L >= L_max)
            break;
        L = std::min(L + 5.0, L_max);
    }
    return step.raw > rep.raw ? step : rep;
}

} // namespace mdiqkd
