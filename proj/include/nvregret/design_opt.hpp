#pragma once

#include <vector>

#include "nvregret/bsaa_regret.hpp"
#include "nvregret/core.hpp"
#include "nvregret/grid.hpp"
#include "nvregret/lp.hpp"

namespace nvregret {

// Result of the budgeted exploration-design search.
struct DesignOptResult {
    long budget = 0;
    long n_star = 0;
    std::vector<double> levels;
    double value = 0.0;
    double u_bar = 0.0; // fully uncensored benchmark at the same budget
    long n_max = 0;     // enumeration bound actually used
};

// Worst-case regret of spending the whole budget on uncensored samples
// (B observations at level 1). Requires q >= 0.5.
double uncensored_benchmark(long B, double q, double tol = 1e-6);

// Enumeration bound ceil(B / ((1-q) (1 - u_bar/q))) on the unit-count sample
// size of an optimal design.
long n_max_bound(long B, double q, double u_bar);
long n_max_bound(long B, double q);

// Lower bound q (1 - min{1, B / (N - ceil(qN) + 1)}) on the worst-case regret
// of any budget-feasible design with N samples.
double delta1_lower_bound(long N, long B, double q);

struct GridLpResult {
    double value = 0.0;
    std::vector<double> levels;
};

// Optimal value of the epigraph LP for the unit-count design with N samples:
// monotone levels under the budget, with the piecewise objective linearized
// over the value grids. Solved by delayed row generation over the full grids,
// so the returned value is the exact grid-LP optimum.
GridLpResult grid_lp(long N, long B, double q, const GridSpec& grid);

// eps-optimal exploration design under total inventory budget B: enumerates
// unit-count sizes N = 1..n_max with grids sized eps/(2(n_max+2)) and returns
// the best design (smallest N on ties).
DesignOptResult solve_design(long B, double q, double eps, long n_cap = 10000);

} // namespace nvregret
