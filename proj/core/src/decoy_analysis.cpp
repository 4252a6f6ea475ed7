#include "mdiqkd/decoy_analysis.hpp"
#include "mdiqkd/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace mdiqkd {

namespace {

double clamp(double v, double lo, double hi)
{
    return v < lo ? lo : (v > hi ? hi : v);
}

void poisson_row(double mu, int n_cut, std::vector<double>& p)
{
    p.resize(n_cut);
    p[0] = std::exp(-mu);
    for (int n = 1; n < n_cut; n++)
        p[n] = p[n - 1] * mu / n;
}

} // namespace

double y11_lower_analytic(double mu_A, double mu_B, double nu_A, double nu_B,
                          const BoundedStatistics& st)
{
    if (!(mu_A > nu_A && nu_A > 0.0 && mu_B > nu_B && nu_B > 0.0))
        throw std::domain_error("y11_lower_analytic: need mu > nu > 0");
    if (st.na < 3 || st.nb < 3)
        throw std::domain_error("y11_lower_analytic: need the 3x3 X grid");

    // grid order: 0 = mu, 1 = nu, 2 = vacuum
    const double m1 = std::exp(nu_A + nu_B) * st.xat(1, 1).Q_lower -
                      std::exp(nu_A) * st.xat(1, 2).Q_upper -
                      std::exp(nu_B) * st.xat(2, 1).Q_upper +
                      st.xat(2, 2).Q_lower;
    const double m2 = std::exp(mu_A + mu_B) * st.xat(0, 0).Q_upper -
                      std::exp(mu_A) * st.xat(0, 2).Q_lower -
                      std::exp(mu_B) * st.xat(2, 0).Q_lower +
                      st.xat(2, 2).Q_lower;

    double y;
    if (mu_A / mu_B <= nu_A / nu_B) {
        y = (mu_A / (nu_A * nu_B) * m1 - nu_A / (mu_A * mu_B) * m2) /
            (mu_A - nu_A);
    } else {
        y = (mu_B / (nu_A * nu_B) * m1 - nu_B / (mu_A * mu_B) * m2) /
            (mu_B - nu_B);
    }
    return clamp(y, 0.0, 1.0);
}

double e11_upper_analytic(double nu_A, double nu_B, double y11_denominator,
                          const BoundedStatistics& st)
{
    if (y11_denominator <= 0.0)
        return 0.5;
    const double num = std::exp(nu_A + nu_B) * st.xat(1, 1).T_upper -
                       std::exp(nu_A) * st.xat(1, 2).T_lower -
                       std::exp(nu_B) * st.xat(2, 1).T_lower +
                       st.xat(2, 2).T_upper;
    return clamp(num / (nu_A * nu_B * y11_denominator), 0.0, 0.5);
}

DecoyBounds decoy_bounds_analytic(const ProtocolParams& params,
                                  const BoundedStatistics& st)
{
    DecoyBounds b;
    b.method = BoundMethod::analytic;
    const double mu_A = params.A.mu, nu_A = params.A.nu;
    const double mu_B = params.B.mu, nu_B = params.B.nu;

    b.Y11_lower = y11_lower_analytic(mu_A, mu_B, nu_A, nu_B, st);

    // denominator for the QBER bound: same estimator on unfluctuated stats
    BoundedStatistics nominal = st;
    for (auto& e : nominal.x) {
        e.Q_upper = e.Q_lower = e.Q;
        e.T_upper = e.T_lower = e.T;
    }
    const double y_nominal =
        y11_lower_analytic(mu_A, mu_B, nu_A, nu_B, nominal);

    if (b.Y11_lower <= 0.0 || y_nominal <= 0.0) {
        b.Y11_lower = 0.0;
        b.e11_upper = 0.5;
        b.feasible = false;
        return b;
    }
    b.e11_upper = e11_upper_analytic(nu_A, nu_B, y_nominal, st);
    return b;
}

DecoyBounds decoy_bounds_lp(const ProtocolParams& params,
                            const BoundedStatistics& st, int n_cut)
{
    DecoyBounds b;
    b.method = BoundMethod::lp;

    const int d = st.na;
    const int K = n_cut * n_cut;
    const bool six = params.variant == Variant::six_intensity;

    LpProblem lp;
    lp.nvars = 2 * K; // Y_nm then Z_nm = e_nm * Y_nm
    lp.upper.assign(lp.nvars, 1.0);
    lp.c.assign(lp.nvars, 0.0);

    std::vector<double> pa, pb;
    std::vector<double> yrow(K), erow_y(K), erow_z(K);
    for (int i = 0; i < d; i++) {
        poisson_row(params.decoy_intensity(params.A, i), n_cut, pa);
        for (int j = 0; j < d; j++) {
            poisson_row(params.decoy_intensity(params.B, j), n_cut, pb);
            double tail = 1.0;
            for (int n = 0; n < n_cut; n++) {
                for (int m = 0; m < n_cut; m++) {
                    int k = n * n_cut + m;
                    double coef = pa[n] * pb[m];
                    tail -= coef;
                    yrow[k] = coef;
                    if (six && (n == 0 || m == 0)) {
                        erow_y[k] = 0.5 * coef; // e = 1/2 exactly
                        erow_z[k] = 0.0;
                    } else {
                        erow_y[k] = 0.0;
                        erow_z[k] = coef;
                    }
                }
            }
            if (tail < 0.0)
                tail = 0.0;
            const BoundEntry& e = st.xat(i, j);

            std::vector<double> row(lp.nvars, 0.0);
            for (int k = 0; k < K; k++)
                row[k] = yrow[k];
            lp.A.push_back(row);
            lp.b.push_back(e.Q_upper);
            for (auto& v : row)
                v = -v;
            lp.A.push_back(row);
            lp.b.push_back(-std::max(e.Q_lower - tail, 0.0));

            for (int k = 0; k < K; k++) {
                row[k] = erow_y[k];
                row[K + k] = erow_z[k];
            }
            lp.A.push_back(row);
            lp.b.push_back(e.T_upper);
            for (auto& v : row)
                v = -v;
            lp.A.push_back(row);
            lp.b.push_back(-std::max(e.T_lower - 0.5 * tail, 0.0));
        }
    }
    // Z_nm <= Y_nm wherever Z is a live variable
    for (int n = 0; n < n_cut; n++) {
        for (int m = 0; m < n_cut; m++) {
            if (six && (n == 0 || m == 0))
                continue;
            int k = n * n_cut + m;
            std::vector<double> row(lp.nvars, 0.0);
            row[K + k] = 1.0;
            row[k] = -1.0;
            lp.A.push_back(row);
            lp.b.push_back(0.0);
        }
    }

    const int k11 = 1 * n_cut + 1;
    lp.c[k11] = 1.0;
    LpResult ymin = solve_lp(lp);
    if (!ymin.feasible || ymin.value <= 0.0) {
        b.Y11_lower = 0.0;
        b.e11_upper = 0.5;
        b.feasible = ymin.feasible;
        return b;
    }
    b.Y11_lower = clamp(ymin.value, 0.0, 1.0);

    lp.c[k11] = 0.0;
    lp.c[K + k11] = -1.0; // maximize Z11
    LpResult zmax = solve_lp(lp);
    if (!zmax.feasible) {
        b.Y11_lower = 0.0;
        b.e11_upper = 0.5;
        b.feasible = false;
        return b;
    }
    b.e11_upper = clamp(-zmax.value / b.Y11_lower, 0.0, 0.5);
    return b;
}

DecoyBounds decoy_bounds(const ProtocolParams& params,
                         const BoundedStatistics& st)
{
    if (params.variant == Variant::seven_intensity)
        return decoy_bounds_analytic(params, st);
    return decoy_bounds_lp(params, st);
}

} // namespace mdiqkd
