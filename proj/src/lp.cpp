#include "nvregret/lp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>

namespace nvregret {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// Tableau simplex over the system [A | I_slack/artificial], basis tracked by
// column index. Bland's rule on both the entering and leaving choice keeps
// the walk finite and deterministic.
struct Tableau {
    std::size_t rows, cols; // cols excludes the rhs column
    std::vector<double> data; // rows x (cols + 1)
    std::vector<std::size_t> basis;

    double& at(std::size_t r, std::size_t c) { return data[r * (cols + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * (cols + 1) + c]; }
    double& rhs(std::size_t r) { return data[r * (cols + 1) + cols]; }
    double rhs(std::size_t r) const { return data[r * (cols + 1) + cols]; }

    void pivot(std::size_t pr, std::size_t pc) {
        double piv = at(pr, pc);
        for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            double factor = at(r, pc);
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= factor * at(pr, c);
        }
        basis[pr] = pc;
    }

    // minimizes cost over feasible bases, with entering columns restricted to
    // the first active_cols (used to lock out artificials in phase 2).
    // Returns false when unbounded.
    bool iterate(const std::vector<double>& cost, std::size_t active_cols, double* objective) {
        std::vector<double> reduced(active_cols);
        for (;;) {
            // reduced costs: c_j - c_B . B^{-1} A_j
            for (std::size_t c = 0; c < active_cols; ++c) reduced[c] = cost[c];
            for (std::size_t r = 0; r < rows; ++r) {
                double cb = cost[basis[r]];
                if (cb == 0.0) continue;
                for (std::size_t c = 0; c < active_cols; ++c) reduced[c] -= cb * at(r, c);
            }
            std::size_t enter = active_cols;
            for (std::size_t c = 0; c < active_cols; ++c)
                if (reduced[c] < -kPivotTol) { enter = c; break; } // Bland: smallest index
            if (enter == active_cols) break;
            std::size_t leave = rows;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows; ++r) {
                double a = at(r, enter);
                if (a > kPivotTol) {
                    double ratio = rhs(r) / a;
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && leave < rows && basis[r] < basis[leave])) {
                        best_ratio = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == rows) return false; // unbounded direction
            pivot(leave, enter);
        }
        double obj = 0.0;
        for (std::size_t r = 0; r < rows; ++r) obj += cost[basis[r]] * rhs(r);
        *objective = obj;
        return true;
    }
};

} // namespace

void LPProblem::add_row(std::vector<double> row, char s, double rhs) {
    if (row.size() != objective.size())
        throw invalid_parameter_error("LPProblem: row width must match variable count");
    if (s != '<' && s != '>' && s != '=')
        throw invalid_parameter_error("LPProblem: sense must be one of < > =");
    A.push_back(std::move(row));
    b.push_back(rhs);
    sense.push_back(s);
}

LpSolution lp_solve(const LPProblem& problem) {
    const std::size_t m = problem.num_rows();
    const std::size_t nv = problem.num_vars();
    if (problem.b.size() != m || problem.sense.size() != m)
        throw invalid_parameter_error("lp_solve: inconsistent problem dimensions");

    // normalize to b >= 0, count slack and artificial columns
    std::vector<double> rhs(problem.b);
    std::vector<char> sense(problem.sense);
    std::vector<std::vector<double>> A(problem.A);
    for (std::size_t r = 0; r < m; ++r) {
        if (rhs[r] < 0.0) {
            rhs[r] = -rhs[r];
            for (double& a : A[r]) a = -a;
            if (sense[r] == '<') sense[r] = '>';
            else if (sense[r] == '>') sense[r] = '<';
        }
        // zero-rhs '>=' rows take a slack basis instead of an artificial
        if (sense[r] == '>' && rhs[r] == 0.0) {
            for (double& a : A[r]) a = -a;
            sense[r] = '<';
        }
    }
    std::size_t num_slack = 0, num_art = 0;
    for (char s : sense) {
        if (s != '=') ++num_slack;
        if (s != '<') ++num_art;
    }

    Tableau t;
    t.rows = m;
    t.cols = nv + num_slack + num_art;
    t.data.assign(m * (t.cols + 1), 0.0);
    t.basis.assign(m, 0);

    std::size_t slack_at = nv, art_at = nv + num_slack;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < nv; ++c) t.at(r, c) = A[r][c];
        t.rhs(r) = rhs[r];
        if (sense[r] == '<') {
            t.at(r, slack_at) = 1.0;
            t.basis[r] = slack_at++;
        } else if (sense[r] == '>') {
            t.at(r, slack_at) = -1.0;
            ++slack_at;
            t.at(r, art_at) = 1.0;
            t.basis[r] = art_at++;
        } else {
            t.at(r, art_at) = 1.0;
            t.basis[r] = art_at++;
        }
    }

    // phase 1: drive the artificial variables to zero
    if (num_art > 0) {
        std::vector<double> cost1(t.cols, 0.0);
        for (std::size_t c = nv + num_slack; c < t.cols; ++c) cost1[c] = 1.0;
        double obj1 = 0.0;
        if (!t.iterate(cost1, t.cols, &obj1)) return LpSolution{LpStatus::infeasible, 0.0, {}};
        if (obj1 > kFeasTol) {
            if (std::getenv("NVREGRET_LP_DEBUG"))
                std::fprintf(stderr, "lp_solve: phase-1 objective %.3e (rows=%zu cols=%zu)\n",
                             obj1, t.rows, t.cols);
            return LpSolution{LpStatus::infeasible, 0.0, {}};
        }
        // pivot any artificial still in the basis out on a structural column
        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis[r] < nv + num_slack) continue;
            std::size_t pc = t.cols;
            for (std::size_t c = 0; c < nv + num_slack; ++c)
                if (std::fabs(t.at(r, c)) > kPivotTol) { pc = c; break; }
            if (pc < t.cols) t.pivot(r, pc);
            // otherwise the row is redundant; the artificial stays at zero
        }
    }

    // phase 2: original objective, artificial columns locked out
    std::vector<double> cost2(t.cols, 0.0);
    for (std::size_t c = 0; c < nv; ++c) cost2[c] = problem.objective[c];
    double obj = 0.0;
    if (!t.iterate(cost2, nv + num_slack, &obj))
        return LpSolution{LpStatus::unbounded, 0.0, {}};

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.x.assign(nv, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis[r] < nv) sol.x[t.basis[r]] = t.rhs(r);
    sol.objective = 0.0;
    for (std::size_t c = 0; c < nv; ++c) sol.objective += problem.objective[c] * sol.x[c];
    return sol;
}

} // namespace nvregret
