#pragma once

#include <vector>

#include "nvregret/errors.hpp"

namespace nvregret {

// Dense linear program: minimize c^T x subject to row constraints and x >= 0.
// sense[i] is '<', '>' or '=' for A[i] . x (<=, >=, ==) b[i].
struct LPProblem {
    std::vector<double> objective;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<char> sense;

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return A.size(); }

    void add_row(std::vector<double> row, char s, double rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

// Two-phase dense simplex with Bland's rule; deterministic for fixed input.
LpSolution lp_solve(const LPProblem& problem);

} // namespace nvregret
