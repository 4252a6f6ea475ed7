#pragma once

#include <vector>

namespace mdiqkd {

// Small dense LP solver for the decoy-state bound programs:
//   minimize c.x  subject to  A x <= b,  0 <= x <= upper
// Upper bounds are handled directly (bounded-variable simplex) so the decoy
// LPs stay at ~100 rows instead of ~300. Anti-cycling by Bland's rule, which
// also breaks ties deterministically.
struct LpProblem {
    int nvars = 0;
    std::vector<double> c;
    std::vector<std::vector<double>> A; // each row has nvars entries
    std::vector<double> b;
    std::vector<double> upper; // per variable; use lp_inf for unbounded
};

extern const double lp_inf;

struct LpResult {
    bool feasible = false;
    double value = 0.0;
    std::vector<double> x;
};

LpResult solve_lp(const LpProblem& p);

} // namespace mdiqkd
