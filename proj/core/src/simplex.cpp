#include "mdiqkd/simplex.hpp"

#include <cmath>
#include <limits>

namespace mdiqkd {

const double lp_inf = std::numeric_limits<double>::infinity();

namespace {

constexpr double kTol = 1e-9;
constexpr double kPivTol = 1e-10;

enum Status : unsigned char { AT_LOWER, AT_UPPER, BASIC };

struct Tableau {
    int m = 0, ncols = 0;
    std::vector<double> T;      // m x ncols, row-major: B^-1 * A_full
    std::vector<double> beta;   // current basic variable values
    std::vector<double> d;      // reduced costs
    std::vector<double> upper;  // per column
    std::vector<int> basis;     // basis[i] = column basic in row i
    std::vector<Status> status; // per column

    double& at(int i, int j) { return T[size_t(i) * ncols + j]; }
    double at(int i, int j) const { return T[size_t(i) * ncols + j]; }
};

// one simplex phase on the current reduced-cost row; returns false on
// iteration blowup (treated as numerical failure by the caller)
bool iterate(Tableau& t)
{
    const int maxit = 200 * (t.m + t.ncols);
    int degenerate_run = 0;
    for (int it = 0; it < maxit; it++) {
        bool bland = degenerate_run > 30;
        int e = -1;
        double best = kTol;
        for (int j = 0; j < t.ncols; j++) {
            if (t.status[j] == BASIC)
                continue;
            double viol = 0.0;
            if (t.status[j] == AT_LOWER && t.d[j] < -kTol)
                viol = -t.d[j];
            else if (t.status[j] == AT_UPPER && t.d[j] > kTol)
                viol = t.d[j];
            else
                continue;
            if (bland) { // first eligible index
                e = j;
                break;
            }
            if (viol > best) {
                best = viol;
                e = j;
            }
        }
        if (e < 0)
            return true; // optimal
        const double sig = (t.status[e] == AT_LOWER) ? 1.0 : -1.0;

        // ratio test
        double tmax = t.upper[e]; // bound-flip distance (may be inf)
        int r = -1;
        for (int i = 0; i < t.m; i++) {
            double w = sig * t.at(i, e);
            double lim;
            if (w > kPivTol)
                lim = t.beta[i] / w;
            else if (w < -kPivTol && t.upper[t.basis[i]] < lp_inf)
                lim = (t.upper[t.basis[i]] - t.beta[i]) / (-w);
            else
                continue;
            if (lim < 0.0)
                lim = 0.0;
            // ties must be judged relative to the blocking step itself;
            // tmax only ever shrinks, otherwise snapping the leaving
            // variable to its bound injects real infeasibility
            if (lim < tmax) {
                tmax = lim;
                r = i;
            } else if (r >= 0 && lim <= tmax * (1.0 + 1e-9)) {
                bool take = bland
                                ? t.basis[i] < t.basis[r]
                                : std::fabs(t.at(i, e)) >
                                      std::fabs(t.at(r, e));
                if (take)
                    r = i;
            }
        }
        if (tmax == lp_inf)
            return false; // unbounded; cannot happen for well-posed inputs

        degenerate_run = (tmax < 1e-12) ? degenerate_run + 1 : 0;
        const double delta = sig * tmax;

        if (r < 0) {
            // bound flip, basis unchanged
            for (int i = 0; i < t.m; i++)
                t.beta[i] -= delta * t.at(i, e);
            t.status[e] = (t.status[e] == AT_LOWER) ? AT_UPPER : AT_LOWER;
            continue;
        }

        // update basic values, then swap e into the basis at row r
        double enter_val = (t.status[e] == AT_UPPER) ? t.upper[e] : 0.0;
        enter_val += delta;
        for (int i = 0; i < t.m; i++)
            t.beta[i] -= delta * t.at(i, e);
        int leave = t.basis[r];
        double w = sig * t.at(r, e);
        // the leaving variable hit whichever bound the ratio test found
        t.status[leave] = (w > 0.0) ? AT_LOWER : AT_UPPER;
        t.basis[r] = e;
        t.status[e] = BASIC;
        t.beta[r] = enter_val;

        // eliminate column e from all other rows and the cost row
        double piv = t.at(r, e);
        for (int j = 0; j < t.ncols; j++)
            t.at(r, j) /= piv;
        for (int i = 0; i < t.m; i++) {
            if (i == r)
                continue;
            double fac = t.at(i, e);
            if (fac == 0.0)
                continue;
            for (int j = 0; j < t.ncols; j++)
                t.at(i, j) -= fac * t.at(r, j);
        }
        double fac = t.d[e];
        if (fac != 0.0)
            for (int j = 0; j < t.ncols; j++)
                t.d[j] -= fac * t.at(r, j);
    }
    return false;
}

void reduced_costs(Tableau& t, const std::vector<double>& cost)
{
    for (int j = 0; j < t.ncols; j++)
        t.d[j] = (j < (int)cost.size()) ? cost[j] : 0.0;
    for (int i = 0; i < t.m; i++) {
        int bj = t.basis[i];
        double cb = (bj < (int)cost.size()) ? cost[bj] : 0.0;
        if (cb == 0.0)
            continue;
        for (int j = 0; j < t.ncols; j++)
            t.d[j] -= cb * t.at(i, j);
    }
}

} // namespace

LpResult solve_lp(const LpProblem& raw)
{
    LpResult res;
    const int n = raw.nvars;
    const int m = (int)raw.A.size();

    // equilibrate: the dense tableau cannot survive coefficient ranges of
    // ten-plus decades, so scale rows then columns to unit max magnitude
    LpProblem p = raw;
    std::vector<double> colscale(n, 1.0);
    for (int i = 0; i < m; i++) {
        double mx = 0.0;
        for (double v : p.A[i])
            mx = std::max(mx, std::fabs(v));
        if (mx > 0.0) {
            for (double& v : p.A[i])
                v /= mx;
            p.b[i] /= mx;
        }
    }
    for (int j = 0; j < n; j++) {
        double mx = 0.0;
        for (int i = 0; i < m; i++)
            mx = std::max(mx, std::fabs(p.A[i][j]));
        if (mx > 0.0) {
            colscale[j] = mx;
            for (int i = 0; i < m; i++)
                p.A[i][j] /= mx;
            p.c[j] /= mx;
            if (p.upper[j] < lp_inf)
                p.upper[j] *= mx;
        }
    }

    // columns: structural | slacks | artificials (for rows with b < 0)
    int nart = 0;
    for (double bi : p.b)
        if (bi < 0.0)
            nart++;
    Tableau t;
    t.m = m;
    t.ncols = n + m + nart;
    t.T.assign(size_t(m) * t.ncols, 0.0);
    t.beta.resize(m);
    t.d.assign(t.ncols, 0.0);
    t.upper.assign(t.ncols, lp_inf);
    t.basis.resize(m);
    t.status.assign(t.ncols, AT_LOWER);
    for (int j = 0; j < n; j++)
        t.upper[j] = p.upper[j];

    std::vector<double> phase1(t.ncols, 0.0);
    int art = n + m;
    for (int i = 0; i < m; i++) {
        double sgn = (p.b[i] < 0.0) ? -1.0 : 1.0;
        for (int j = 0; j < n; j++)
            t.at(i, j) = sgn * p.A[i][j];
        t.at(i, n + i) = sgn;
        t.beta[i] = sgn * p.b[i];
        if (sgn < 0.0) {
            t.at(i, art) = 1.0;
            t.basis[i] = art;
            t.status[art] = BASIC;
            phase1[art] = 1.0;
            art++;
        } else {
            t.basis[i] = n + i;
            t.status[n + i] = BASIC;
        }
    }

    if (nart > 0) {
        reduced_costs(t, phase1);
        if (!iterate(t))
            return res;
        double infeas = 0.0;
        for (int i = 0; i < m; i++)
            if (t.basis[i] >= n + m)
                infeas += t.beta[i];
        if (infeas > 1e-7)
            return res;
        // box any lingering degenerate artificials at zero
        for (int j = n + m; j < t.ncols; j++)
            t.upper[j] = 0.0;
    }

    std::vector<double> cost(p.c);
    reduced_costs(t, cost);
    if (!iterate(t))
        return res;

    res.feasible = true;
    res.x.assign(n, 0.0);
    for (int j = 0; j < n; j++)
        if (t.status[j] == AT_UPPER)
            res.x[j] = t.upper[j];
    for (int i = 0; i < m; i++)
        if (t.basis[i] < n)
            res.x[t.basis[i]] = t.beta[i];
    res.value = 0.0;
    for (int j = 0; j < n; j++) {
        res.x[j] /= colscale[j]; // undo equilibration
        res.value += raw.c[j] * res.x[j];
    }
    return res;
}

} // namespace mdiqkd
