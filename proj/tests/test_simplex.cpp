#include "mdiqkd/simplex.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace mdiqkd;

namespace {

LpProblem make_lp(int nvars, std::vector<double> c,
                  std::vector<std::vector<double>> A, std::vector<double> b,
                  std::vector<double> upper)
{
    LpProblem p;
    p.nvars = nvars;
    p.c = std::move(c);
    p.A = std::move(A);
    p.b = std::move(b);
    p.upper = std::move(upper);
    return p;
}

bool is_feasible(const LpProblem& p, const std::vector<double>& x,
                 double tol = 1e-7)
{
    for (size_t i = 0; i < p.A.size(); i++) {
        double s = 0;
        for (int j = 0; j < p.nvars; j++)
            s += p.A[i][j] * x[j];
        if (s > p.b[i] + tol)
            return false;
    }
    for (int j = 0; j < p.nvars; j++)
        if (x[j] < -tol || x[j] > p.upper[j] + tol)
            return false;
    return true;
}

} // namespace

TEST_CASE("maximize x+y on the unit simplex")
{
    // min -x-y s.t. x+y <= 1
    LpProblem p = make_lp(2, {-1, -1}, {{1, 1}}, {1}, {lp_inf, lp_inf});
    LpResult r = solve_lp(p);
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("variable upper bounds are honored without explicit rows")
{
    LpProblem p = make_lp(1, {-1}, {}, {}, {0.3});
    LpResult r = solve_lp(p);
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("negative right-hand sides go through phase 1")
{
    // x >= 2 expressed as -x <= -2, minimize x -> 2
    LpProblem p = make_lp(1, {1}, {{-1}}, {-2}, {lp_inf});
    LpResult r = solve_lp(p);
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("infeasible systems are reported")
{
    // x >= 2 but x <= 1
    LpProblem p = make_lp(1, {1}, {{-1}}, {-2}, {1.0});
    LpResult r = solve_lp(p);
    CHECK(!r.feasible);
}

TEST_CASE("interval constraints pin down the solution")
{
    // 0.4 <= x + y <= 0.6, minimize y with x <= 0.25
    LpProblem p =
        make_lp(2, {0, 1}, {{1, 1}, {-1, -1}}, {0.6, -0.4}, {0.25, 1.0});
    LpResult r = solve_lp(p);
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(0.15).epsilon(1e-9));
}

TEST_CASE("degenerate problems terminate at the optimum")
{
    // multiple constraints active at the optimum
    LpProblem p = make_lp(
        2, {-1, -1},
        {{1, 0}, {0, 1}, {1, 1}, {1, 1}, {2, 2}},
        {0.5, 0.5, 1.0, 1.0, 2.0}, {lp_inf, lp_inf});
    LpResult r = solve_lp(p);
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("solutions are feasible and beat random feasible candidates")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uc(-1, 1), ua(0, 1), ub(0.5, 2);
    for (int t = 0; t < 50; t++) {
        const int n = 4, m = 6;
        LpProblem p;
        p.nvars = n;
        p.upper.assign(n, 1.0);
        p.c.resize(n);
        for (auto& v : p.c)
            v = uc(rng);
        for (int i = 0; i < m; i++) {
            std::vector<double> row(n);
            for (auto& v : row)
                v = ua(rng);
            p.A.push_back(row);
            p.b.push_back(ub(rng)); // x = 0 always feasible
        }
        LpResult r = solve_lp(p);
        REQUIRE(r.feasible);
        REQUIRE(is_feasible(p, r.x));
        // sample candidates by scaling random box points back into the
        // feasible region; none may beat the reported optimum
        std::uniform_real_distribution<double> ux(0, 1);
        for (int k = 0; k < 200; k++) {
            std::vector<double> x(n);
            for (auto& v : x)
                v = ux(rng);
            double worst = 1.0;
            for (int i = 0; i < m; i++) {
                double s = 0;
                for (int j = 0; j < n; j++)
                    s += p.A[i][j] * x[j];
                if (s > p.b[i])
                    worst = std::min(worst, p.b[i] / s);
            }
            double val = 0;
            for (int j = 0; j < n; j++)
                val += p.c[j] * x[j] * worst;
            CHECK(val >= r.value - 1e-8);
        }
    }
}

TEST_CASE("badly scaled coefficients still solve correctly")
{
    // same optimum as the unit-simplex case, but with ten decades of
    // coefficient spread (the decoy programs look like this)
    LpProblem p = make_lp(2, {-1e-10, -1},
                          {{1e-10, 1}}, {1}, {lp_inf, lp_inf});
    LpResult r = solve_lp(p);
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-8));
}
