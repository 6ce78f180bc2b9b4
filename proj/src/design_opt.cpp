#include "nvregret/design_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nvregret/bernstein.hpp"

namespace nvregret {

namespace {

void require_regime(double q) {
    if (!(q >= 0.5))
        throw unsupported_regime_error("design optimization requires q >= 0.5");
    if (!(q < 1.0)) throw invalid_parameter_error("q must lie in [0.5, 1)");
}

std::vector<double> uniform_grid_on(double lo, double hi, double mesh) {
    long cells = std::max(1L, static_cast<long>(std::ceil((hi - lo) / mesh)));
    std::vector<double> g(static_cast<std::size_t>(cells) + 1);
    for (long i = 0; i <= cells; ++i)
        g[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
    return g;
}

// Affine representation c0 + sum_j coef[j] x_{j+1} of
// sum_{k in [k_lo, k_hi]} (x_{k+1} - x_k) psi_k(t) with x_0 = 0, x_{N+1} = 1.
struct AffinePiece {
    double constant = 0.0;
    std::vector<double> coef; // size N
};

AffinePiece affine_range(const std::vector<double>& psi_vals, std::size_t k_lo,
                         std::size_t k_hi, std::size_t N) {
    AffinePiece out;
    out.coef.assign(N, 0.0);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        double c = psi_vals[k];
        if (k + 1 <= N)
            out.coef[k] += c; // x_{k+1}
        else
            out.constant += c; // x_{N+1} = 1
        if (k >= 1) out.coef[k - 1] -= c; // x_k
    }
    return out;
}

} // namespace

double uncensored_benchmark(long B, double q, double tol) {
    require_regime(q);
    if (B < 1) throw invalid_parameter_error("uncensored_benchmark: B must be >= 1");
    CensoringDesign design({1.0}, {B});
    CostParameters cp(q, 1.0 - q);
    return worst_case_regret_bsaa(design, cp, tol).value;
}

long n_max_bound(long B, double q, double u_bar) {
    require_regime(q);
    if (B < 1) throw invalid_parameter_error("n_max_bound: B must be >= 1");
    if (!(u_bar < q)) throw invalid_parameter_error("n_max_bound: benchmark must be below q");
    double denom = (1.0 - q) * (1.0 - u_bar / q);
    return static_cast<long>(std::ceil(static_cast<double>(B) / denom - 1e-9));
}

long n_max_bound(long B, double q) {
    return n_max_bound(B, q, uncensored_benchmark(B, q));
}

double delta1_lower_bound(long N, long B, double q) {
    if (N < 1) throw invalid_parameter_error("delta1_lower_bound: N must be >= 1");
    double slots = static_cast<double>(N - ceil_count(q, N) + 1);
    double frac = std::min(1.0, static_cast<double>(B) / slots);
    return q * (1.0 - frac);
}

GridLpResult grid_lp(long N, long B, double q, const GridSpec& grid) {
    if (N < 1) throw invalid_parameter_error("grid_lp: N must be >= 1");
    if (B < 0) throw invalid_parameter_error("grid_lp: B must be >= 0");
    if (!(grid.mesh_v > 0.0) || !(grid.mesh_w > 0.0))
        throw invalid_parameter_error("grid_lp: meshes must be positive");

    const std::size_t sN = static_cast<std::size_t>(N);
    const std::vector<double> V = uniform_grid_on(0.0, q, grid.mesh_v);
    const std::vector<double> W = uniform_grid_on(q, 1.0, grid.mesh_w);

    // unit-count psi values per grid point, psi_k for k = 0..N
    auto psi_table = [&](const std::vector<double>& pts) {
        std::vector<std::vector<double>> table(pts.size(), std::vector<double>(sN + 1));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t k = 0; k <= sN; ++k)
                table[i][k] = psi_bsaa(PsiSpec(N, static_cast<long>(k), q), pts[i]);
        return table;
    };
    const auto psiV = psi_table(V);
    const auto psiW = psi_table(W);

    // variables: x_1..x_N | t | alpha_0..alpha_N | beta_0..beta_N | beta_all
    // (beta_all carries the branch where every piece sits above q)
    const std::size_t var_t = sN;
    const std::size_t var_alpha = sN + 1;
    const std::size_t var_beta = var_alpha + sN + 1;
    const std::size_t var_beta_all = var_beta + sN + 1;
    const std::size_t nvars = var_beta_all + 1;

    LPProblem lp;
    lp.objective.assign(nvars, 0.0);
    lp.objective[var_t] = 1.0;

    auto zero_row = [&] { return std::vector<double>(nvars, 0.0); };
    for (std::size_t j = 0; j + 1 < sN; ++j) { // monotone chain
        auto row = zero_row();
        row[j + 1] = 1.0;
        row[j] = -1.0;
        lp.add_row(std::move(row), '>', 0.0);
    }
    {
        auto row = zero_row();
        row[sN - 1] = 1.0;
        lp.add_row(std::move(row), '<', 1.0); // x_N <= 1
    }
    {
        auto row = zero_row();
        for (std::size_t j = 0; j < sN; ++j) row[j] = 1.0;
        lp.add_row(std::move(row), '<', static_cast<double>(B)); // budget
    }
    for (std::size_t i = 0; i <= sN; ++i) { // epigraph
        auto row = zero_row();
        row[var_t] = 1.0;
        row[var_alpha + i] = -1.0;
        row[var_beta + i] = -1.0;
        lp.add_row(std::move(row), '>', 0.0);
    }
    {
        auto row = zero_row();
        row[var_t] = 1.0;
        row[var_beta_all] = -1.0;
        lp.add_row(std::move(row), '>', 0.0);
    }

    // cut for one grid point: alpha_i >= A_{i,N}(x, v) (lower side),
    // beta_i >= B_{i,N}(x, w), or beta_all >= the full-sum branch; slot == sN+1
    // encodes beta_all on the upper side
    auto add_cut = [&](std::size_t slot, bool lower_side, std::size_t pt_idx) {
        const auto& psi_vals = lower_side ? psiV[pt_idx] : psiW[pt_idx];
        AffinePiece piece;
        std::size_t var;
        if (lower_side) {
            piece = affine_range(psi_vals, 0, slot, sN);
            var = var_alpha + slot;
        } else if (slot == sN + 1) {
            piece = affine_range(psi_vals, 0, sN, sN);
            var = var_beta_all;
        } else if (slot + 1 <= sN) {
            piece = affine_range(psi_vals, slot + 1, sN, sN);
            var = var_beta + slot;
        } else {
            piece = AffinePiece{0.0, std::vector<double>(sN, 0.0)};
            var = var_beta + slot;
        }
        auto row = zero_row();
        row[var] = 1.0;
        for (std::size_t j = 0; j < sN; ++j) row[j] = -piece.coef[j];
        lp.add_row(std::move(row), '>', piece.constant);
    };

    std::set<std::pair<std::size_t, std::size_t>> cutsV, cutsW;
    for (std::size_t i = 0; i <= sN; ++i)
        for (std::size_t p : {std::size_t{0}, V.size() - 1})
            if (cutsV.insert({i, p}).second) add_cut(i, true, p);
    for (std::size_t i = 0; i <= sN + 1; ++i)
        for (std::size_t p : {std::size_t{0}, W.size() - 1})
            if (cutsW.insert({i, p}).second) add_cut(i, false, p);

    // delayed row generation: solve, add the most violated grid constraint
    // per (i, side), repeat until every grid row is satisfied
    LpSolution sol;
    for (int round = 0; round < 500; ++round) {
        sol = lp_solve(lp);
        if (sol.status != LpStatus::optimal)
            throw std::logic_error(sol.status == LpStatus::infeasible
                                       ? "grid_lp: master LP reported infeasible"
                                       : "grid_lp: master LP reported unbounded");
        const std::vector<double>& xv = sol.x;

        bool violated = false;
        auto scan_side = [&](bool lower_side) {
            const auto& pts = lower_side ? V : W;
            const auto& table = lower_side ? psiV : psiW;
            const std::size_t var0 = lower_side ? var_alpha : var_beta;
            // best grid point per i, streaming prefix/suffix sums over k
            std::vector<double> best(sN + 1, -std::numeric_limits<double>::infinity());
            std::vector<std::size_t> arg(sN + 1, 0);
            std::vector<double> lens(sN + 1);
            for (std::size_t k = 0; k <= sN; ++k) {
                double xk = k == 0 ? 0.0 : xv[k - 1];
                double xk1 = k + 1 <= sN ? xv[k] : 1.0;
                lens[k] = xk1 - xk;
            }
            for (std::size_t p = 0; p < pts.size(); ++p) {
                double run = 0.0;
                if (lower_side) {
                    for (std::size_t i = 0; i <= sN; ++i) {
                        run += lens[i] * table[p][i];
                        if (run > best[i]) { best[i] = run; arg[i] = p; }
                    }
                } else {
                    // suffix sums: evaluate from the top index down
                    double suffix = 0.0;
                    std::vector<double> suf(sN + 2, 0.0);
                    for (std::size_t k = sN + 1; k-- > 0;) {
                        suffix += k <= sN ? lens[k] * table[p][k] : 0.0;
                        suf[k] = suffix;
                    }
                    for (std::size_t i = 0; i <= sN; ++i) {
                        double val = i + 1 <= sN ? suf[i + 1] : 0.0;
                        if (val > best[i]) { best[i] = val; arg[i] = p; }
                    }
                }
            }
            for (std::size_t i = 0; i <= sN; ++i) {
                if (best[i] > xv[var0 + i] + 1e-9) {
                    auto& cuts = lower_side ? cutsV : cutsW;
                    if (cuts.insert({i, arg[i]}).second) {
                        add_cut(i, lower_side, arg[i]);
                        violated = true;
                    }
                }
            }
        };
        scan_side(true);
        scan_side(false);
        if (!violated) break;
    }

    GridLpResult out;
    out.value = sol.objective;
    out.levels.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(sN));
    for (double& x : out.levels) x = std::clamp(x, 0.0, 1.0);
    std::sort(out.levels.begin(), out.levels.end());
    return out;
}

DesignOptResult solve_design(long B, double q, double eps, long n_cap) {
    require_regime(q);
    if (B < 1) throw invalid_parameter_error("solve_design: B must be >= 1");
    if (!(eps > 0.0)) throw invalid_parameter_error("solve_design: eps must be positive");

    double u_bar = uncensored_benchmark(B, q);
    long n_max = n_max_bound(B, q, u_bar);
    if (n_max > n_cap)
        throw capacity_error("solve_design: enumeration bound exceeds the configured cap");
    GridSpec grid = GridSpec::for_eps(eps, n_max);

    DesignOptResult result;
    result.budget = B;
    result.u_bar = u_bar;
    result.n_max = n_max;
    result.value = std::numeric_limits<double>::infinity();
    for (long N = 1; N <= n_max; ++N) {
        GridLpResult lp = grid_lp(N, B, q, grid);
        if (lp.value < result.value) {
            result.value = lp.value;
            result.n_star = N;
            result.levels = lp.levels;
        }
    }
    return result;
}

} // namespace nvregret
