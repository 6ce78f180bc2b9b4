#include "nvregret/km_regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nvregret/parallel.hpp"

namespace nvregret {

namespace {

constexpr double kProbSlack = 1e-9;   // tolerance for monotonicity of CDF inputs
constexpr double kWorkCap = 5e7;      // max enumeration leaves per evaluation
constexpr double kLatticeCap = 2e8;   // max lattice points per sweep

// All count configurations of n samples over the given cells, with their
// multinomial probabilities. Cells with probability zero only admit count 0.
struct MultinomialTable {
    long n = 0;
    std::size_t cells = 0;
    std::vector<long> counts; // entries * cells
    std::vector<double> pmf;

    std::size_t entries() const { return pmf.size(); }
    const long* entry(std::size_t e) const { return counts.data() + e * cells; }
};

MultinomialTable enumerate_multinomial(long n, const std::vector<double>& probs) {
    MultinomialTable table;
    table.n = n;
    table.cells = probs.size();
    std::vector<double> logp(probs.size(), 0.0);
    for (std::size_t j = 0; j < probs.size(); ++j)
        if (probs[j] > 0.0) logp[j] = std::log(probs[j]);

    std::vector<long> current(probs.size(), 0);
    double base = log_factorial(n);

    // recursive composition walk, last cell absorbs the remainder
    auto walk = [&](auto&& self, std::size_t cell, long remaining, double logw) -> void {
        if (cell + 1 == probs.size()) {
            if (probs[cell] == 0.0 && remaining > 0) return;
            current[cell] = remaining;
            double lw = logw - log_factorial(remaining);
            if (remaining > 0) lw += static_cast<double>(remaining) * logp[cell];
            table.counts.insert(table.counts.end(), current.begin(), current.end());
            table.pmf.push_back(std::exp(base + lw));
            return;
        }
        long hi = probs[cell] > 0.0 ? remaining : 0;
        for (long m = 0; m <= hi; ++m) {
            current[cell] = m;
            double lw = logw - log_factorial(m);
            if (m > 0) lw += static_cast<double>(m) * logp[cell];
            self(self, cell + 1, remaining - m, lw);
        }
    };
    walk(walk, 0, n, 0.0);
    return table;
}

double composition_count(long n, std::size_t cells) {
    // C(n + cells - 1, cells - 1), as a double to keep the overflow check cheap
    double v = 1.0;
    for (std::size_t i = 1; i < cells; ++i)
        v *= static_cast<double>(n + static_cast<long>(i)) / static_cast<double>(i);
    return v;
}

double survival_from_counts(long n, const long* N, std::size_t k, const long* C) {
    double g = 1.0;
    long placedN = 0, placedC = 0;
    for (std::size_t j = 0; j <= k; ++j) {
        long den = n - placedN - placedC;
        if (den > 0) g *= static_cast<double>(den - N[j]) / static_cast<double>(den);
        placedN += N[j];
        if (j < k) placedC += C[j];
    }
    return g;
}

void validate_prefix(const CensoringDesign& design, std::size_t k,
                     const std::vector<double>& f_prefix, double v) {
    if (k > design.num_levels())
        throw invalid_parameter_error("km piece index out of range");
    if (f_prefix.size() != k)
        throw invalid_parameter_error("km f_prefix size must equal piece index");
    double prev = 0.0;
    for (double f : f_prefix) {
        if (f < -kProbSlack || f > 1.0 + kProbSlack || f < prev - kProbSlack)
            throw invalid_parameter_error("km f_prefix must be nondecreasing in [0,1]");
        prev = std::max(prev, f);
    }
    if (v < prev - kProbSlack || v > 1.0 + kProbSlack)
        throw invalid_parameter_error("km local CDF value must dominate the prefix");
}

} // namespace

double survival_product(long n, const std::vector<long>& N, const std::vector<long>& C) {
    if (N.size() != C.size() + 1)
        throw invalid_parameter_error("survival_product: N must have one more cell than C");
    return survival_from_counts(n, N.data(), C.size(), C.data());
}

CountProfile make_count_profile(long n, std::vector<long> N, std::vector<long> C) {
    long total = 0;
    for (long x : N) total += x;
    for (long x : C) total += x;
    if (total > n) throw invalid_parameter_error("count profile exceeds sample size");
    CountProfile cp{std::move(N), std::move(C), 1.0};
    cp.G = survival_product(n, cp.N, cp.C);
    return cp;
}

double km_count_mass(const CensoringDesign& design, std::size_t k,
                     const std::vector<double>& f_prefix, double v, double g_threshold) {
    validate_prefix(design, k, f_prefix, v);
    const long n = design.total();
    const long n_right = n - design.cumulative(k);

    // partition cell probabilities: [0,x_1], (x_1,x_2], ..., (x_k, z]
    std::vector<double> cell(k + 1, 0.0);
    double prev = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        cell[j] = std::max(f_prefix[j] - prev, 0.0);
        prev = std::max(prev, f_prefix[j]);
    }
    cell[k] = std::max(v - prev, 0.0);

    // per-group count tables: group l sees the cells up to its own level,
    // the pooled later groups see every cell plus the local remainder
    std::vector<MultinomialTable> left(k);
    double work = 1.0;
    for (std::size_t l = 1; l <= k; ++l) {
        std::vector<double> probs;
        probs.push_back(std::max(1.0 - f_prefix[l - 1], 0.0));
        for (std::size_t j = 0; j < l; ++j) probs.push_back(cell[j]);
        work *= composition_count(design.count(l), probs.size());
        if (work > kWorkCap)
            throw capacity_error("km_count_mass: enumeration too large for this design");
        left[l - 1] = enumerate_multinomial(design.count(l), probs);
    }
    std::vector<double> rprobs;
    rprobs.push_back(std::max(1.0 - v, 0.0));
    for (std::size_t j = 0; j <= k; ++j) rprobs.push_back(cell[j]);
    if (work * composition_count(n_right, rprobs.size()) > kWorkCap)
        throw capacity_error("km_count_mass: enumeration too large for this design");
    MultinomialTable right = enumerate_multinomial(n_right, rprobs);

    std::vector<long> N(k + 1, 0); // uncensored counts per cell (left groups)
    std::vector<long> C(k, 0);     // censored counts per level
    std::vector<long> Nt(k + 1, 0);
    double acc = 0.0;

    auto combine = [&](auto&& self, std::size_t l, double weight) -> void {
        if (l == k) {
            for (std::size_t e = 0; e < right.entries(); ++e) {
                const long* rc = right.entry(e); // rc[0] above z, rc[1..k+1] cells
                for (std::size_t j = 0; j <= k; ++j) Nt[j] = N[j] + rc[j + 1];
                double g = survival_from_counts(n, Nt.data(), k, C.data());
                if (g <= g_threshold) acc += weight * right.pmf[e];
            }
            return;
        }
        const MultinomialTable& t = left[l];
        for (std::size_t e = 0; e < t.entries(); ++e) {
            const long* c = t.entry(e); // c[0] censored at level l+1, c[1..l+1] cells
            C[l] = c[0];
            for (std::size_t j = 0; j <= l; ++j) N[j] += c[j + 1];
            self(self, l + 1, weight * t.pmf[e]);
            for (std::size_t j = 0; j <= l; ++j) N[j] -= c[j + 1];
        }
    };
    combine(combine, 0, 1.0);
    return std::clamp(acc, 0.0, 1.0);
}

double km_action_cdf(const CensoringDesign& design, double q, std::size_t k,
                     const std::vector<double>& f_prefix, double v) {
    if (k == 0) {
        validate_prefix(design, 0, f_prefix, v);
        long n = design.total();
        return bernstein_tail(ceil_count(q, n), n, std::clamp(v, 0.0, 1.0));
    }
    return km_count_mass(design, k, f_prefix, v, 1.0 - q + kEqTol);
}

double psi_km(const CensoringDesign& design, double q, std::size_t k,
              const std::vector<double>& f_prefix, double v) {
    double p = km_action_cdf(design, q, k, f_prefix, v);
    return (1.0 - p) * (v - q) + std::max(q - v, 0.0);
}

namespace {

// Maximizes the piecewise objective
//   len_0 * Psi_0(f0+) + sum_{k>=1} len_k * Psi_k(f_1..f_k, f_k+)
// over monotone chains f0+ <= f1 <= f1+ <= ... <= 1 restricted to the given
// candidate grids. Variables attached to zero-length pieces carry no own
// Psi term and only constrain deeper coordinates.
struct LatticeSweep {
    const CensoringDesign* design = nullptr;
    double q = 0.5;
    std::vector<double> len;   // piece lengths, index 0..K
    std::size_t k_last = 0;    // largest k >= 1 with len[k] > 0 (0 if none)

    std::vector<double> f0p_vals, f0p_psi;    // piece-0 candidates and psi values
    std::vector<std::vector<double>> f_vals;  // per k = 1..k_last
    std::vector<std::vector<double>> fp_vals; // empty when len[k] == 0

    struct Best {
        double value = -std::numeric_limits<double>::infinity();
        double f0p = 0.0;
        std::vector<std::pair<double, double>> coords; // (f_k, f_k+), k = 1..k_last
    };

    double lattice_size_estimate() const {
        double total = 1.0;
        for (std::size_t k = 1; k <= k_last; ++k) {
            double g = static_cast<double>(f_vals[k].size());
            total *= len[k] > 0.0 ? g * (g + 1.0) / 2.0 : g;
        }
        return total;
    }

    // best piece-0 contribution subject to f0+ <= f1 (smallest arg on ties)
    std::pair<double, double> piece0_term(double f1) const {
        if (len[0] <= 0.0) return {0.0, 0.0};
        double best = -std::numeric_limits<double>::infinity();
        double arg = 0.0;
        for (std::size_t i = 0; i < f0p_vals.size() && f0p_vals[i] <= f1 + 1e-15; ++i) {
            if (f0p_psi[i] > best) {
                best = f0p_psi[i];
                arg = f0p_vals[i];
            }
        }
        if (best == -std::numeric_limits<double>::infinity()) return {0.0, 0.0};
        return {len[0] * best, arg};
    }

    struct State {
        std::vector<double> fbuf;                       // f_1..f_k prefix values
        std::vector<std::pair<double, double>> coords;  // working coordinates
        double f0p = 0.0;
        Best best;
    };

    void run(Best& out) const {
        State st;
        st.fbuf.assign(k_last + 1, 0.0);
        st.coords.assign(k_last, {0.0, 0.0});
        level(st, 1, 0.0, 0.0);
        out = st.best;
    }

    void run_fixed_f1(std::size_t f1_idx, Best& out) const {
        State st;
        st.fbuf.assign(k_last + 1, 0.0);
        st.coords.assign(k_last, {0.0, 0.0});
        at_value(st, 1, f_vals[1][f1_idx], 0.0);
        out = st.best;
    }

    void level(State& st, std::size_t k, double lo, double acc) const {
        if (k > k_last) {
            record(st, acc);
            return;
        }
        for (double fk : f_vals[k]) {
            if (fk < lo) continue;
            at_value(st, k, fk, acc);
        }
    }

    void at_value(State& st, std::size_t k, double fk, double acc) const {
        st.fbuf[k] = fk;
        if (k == 1) {
            auto [term, arg] = piece0_term(fk);
            acc += term;
            st.f0p = arg;
        }
        if (len[k] > 0.0) {
            std::vector<double> prefix(st.fbuf.begin() + 1,
                                       st.fbuf.begin() + static_cast<long>(k) + 1);
            // with no samples beyond level k the action CDF does not depend
            // on the local value, so evaluate it once per prefix
            bool v_free = design->total() - design->cumulative(k) > 0;
            double p_const =
                v_free ? 0.0 : km_action_cdf(*design, q, k, prefix, fk);
            for (double fkp : fp_vals[k]) {
                if (fkp < fk) continue;
                double p = v_free ? km_action_cdf(*design, q, k, prefix, fkp) : p_const;
                double psi = (1.0 - p) * (fkp - q) + std::max(q - fkp, 0.0);
                st.coords[k - 1] = {fk, fkp};
                level(st, k + 1, fkp, acc + len[k] * psi);
            }
        } else {
            st.coords[k - 1] = {fk, fk};
            level(st, k + 1, fk, acc);
        }
    }

    void record(State& st, double acc) const {
        if (acc > st.best.value) {
            st.best.value = acc;
            st.best.f0p = st.f0p;
            st.best.coords = st.coords;
        }
    }
};

std::vector<double> uniform_grid(double mesh) {
    std::vector<double> g;
    for (long i = 0;; ++i) {
        double t = static_cast<double>(i) * mesh;
        if (t >= 1.0 - 1e-15) break;
        g.push_back(t);
    }
    g.push_back(1.0);
    return g;
}

std::vector<double> local_grid(double center, double radius, double mesh) {
    std::vector<double> g;
    double lo = std::max(0.0, center - radius);
    double hi = std::min(1.0, center + radius);
    for (double t = lo; t < hi - 1e-15; t += mesh) g.push_back(t);
    g.push_back(hi);
    return g;
}

StepCDF witness_from_chain(const CensoringDesign& design, const MonotonePoint& mp) {
    const std::size_t K = design.num_levels();
    double min_gap = 1.0;
    for (std::size_t k = 0; k <= K; ++k) {
        double gap = design.breakpoint(k + 1) - design.breakpoint(k);
        if (gap > 0.0) min_gap = std::min(min_gap, gap);
    }
    double eps = std::min(1e-6, min_gap / 4.0);

    std::vector<std::pair<double, double>> pts;
    pts.emplace_back(0.0, mp.f0_plus);
    for (std::size_t k = 1; k <= K; ++k) {
        double x = design.level(k);
        auto [f, fp] = mp.levels[k - 1];
        if (x > 0.0 && x < 1.0) {
            pts.emplace_back(x, f);
            if (fp > f + 1e-15 && design.breakpoint(k + 1) - x > 2.0 * eps)
                pts.emplace_back(x + eps, fp);
        }
    }
    pts.emplace_back(1.0, 1.0);

    std::sort(pts.begin(), pts.end());
    std::vector<double> support, cdf;
    for (const auto& [z, f] : pts) {
        double value = f;
        if (!cdf.empty()) value = std::max(value, cdf.back());
        if (!support.empty() && support.back() == z)
            cdf.back() = std::max(cdf.back(), value);
        else {
            support.push_back(z);
            cdf.push_back(value);
        }
    }
    return StepCDF(std::move(support), std::move(cdf));
}

} // namespace

RegretCertificate worst_case_regret_km(const CensoringDesign& design,
                                       const CostParameters& cp, const GridSpec& grid) {
    if (!(grid.mesh_v > 0.0))
        throw invalid_parameter_error("worst_case_regret_km: mesh must be positive");
    const double q = cp.q;
    const double scale = cp.c_u + cp.c_o;
    const double mesh = grid.mesh_v;
    const std::size_t K = design.num_levels();
    const long n = design.total();

    LatticeSweep sweep;
    sweep.design = &design;
    sweep.q = q;
    sweep.len.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k)
        sweep.len[k] = design.breakpoint(k + 1) - design.breakpoint(k);
    for (std::size_t k = 1; k <= K; ++k)
        if (sweep.len[k] > 0.0) sweep.k_last = k;

    const std::vector<double> coarse = uniform_grid(mesh);
    const PsiSpec psi0_spec(n, 0, q);
    auto psi0_fill = [&](LatticeSweep& s, const std::vector<double>& vals) {
        s.f0p_vals = vals;
        s.f0p_psi.resize(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i)
            s.f0p_psi[i] = psi_bsaa(psi0_spec, vals[i]);
    };

    LatticeSweep::Best best;
    if (sweep.k_last == 0) {
        // every level sits at 1; only the first piece contributes
        for (double t : coarse) {
            double val = sweep.len[0] * psi_bsaa(psi0_spec, t);
            if (val > best.value) { best.value = val; best.f0p = t; }
        }
        for (double t : local_grid(best.f0p, mesh, mesh / 10.0)) {
            double val = sweep.len[0] * psi_bsaa(psi0_spec, t);
            if (val > best.value) { best.value = val; best.f0p = t; }
        }
    } else {
        if (sweep.len[0] > 0.0) psi0_fill(sweep, coarse);
        sweep.f_vals.assign(sweep.k_last + 1, {});
        sweep.fp_vals.assign(sweep.k_last + 1, {});
        for (std::size_t k = 1; k <= sweep.k_last; ++k) {
            sweep.f_vals[k] = coarse;
            if (sweep.len[k] > 0.0) sweep.fp_vals[k] = coarse;
        }
        if (sweep.lattice_size_estimate() > kLatticeCap)
            throw capacity_error("worst_case_regret_km: lattice too large; coarsen the mesh");

        // coarse pass, parallel over the top-level coordinate; merged in
        // index order so ties resolve to the lexicographically smallest point
        std::vector<LatticeSweep::Best> slots(coarse.size());
        parallel_for(coarse.size(), [&](std::size_t i) { sweep.run_fixed_f1(i, slots[i]); });
        for (const auto& s : slots)
            if (s.value > best.value) best = s;

        // one refinement pass around the incumbent at a tenth of the mesh
        LatticeSweep fine = sweep;
        if (sweep.len[0] > 0.0) psi0_fill(fine, local_grid(best.f0p, mesh, mesh / 10.0));
        for (std::size_t k = 1; k <= sweep.k_last; ++k) {
            fine.f_vals[k] = local_grid(best.coords[k - 1].first, mesh, mesh / 10.0);
            if (sweep.len[k] > 0.0)
                fine.fp_vals[k] = local_grid(best.coords[k - 1].second, mesh, mesh / 10.0);
        }
        fine.design = &design;
        LatticeSweep::Best refined;
        fine.run(refined);
        if (refined.value > best.value) best = refined;
    }

    MonotonePoint mp;
    mp.f0_plus = best.f0p;
    mp.levels.resize(K);
    double carry = best.f0p;
    for (std::size_t k = 1; k <= K; ++k) {
        if (k <= sweep.k_last && k - 1 < best.coords.size()) {
            mp.levels[k - 1] = best.coords[k - 1];
            carry = best.coords[k - 1].second;
        } else {
            mp.levels[k - 1] = {carry, carry};
        }
    }

    return RegretCertificate{best.value * scale,
                             -1,
                             0.0,
                             0.0,
                             witness_from_chain(design, mp),
                             mesh * scale,
                             mp};
}

std::optional<long> sample_complexity_km(double x, double q, double target, long n_cap,
                                         const GridSpec& grid) {
    if (!(target > 0.0))
        throw invalid_parameter_error("sample_complexity_km: target must be positive");
    if (n_cap < 1)
        throw invalid_parameter_error("sample_complexity_km: n_cap must be >= 1");
    CostParameters cp(q, 1.0 - q);
    for (long n = 1; n <= n_cap; ++n) {
        CensoringDesign design({x}, {n});
        if (worst_case_regret_km(design, cp, grid).value <= target) return n;
    }
    return std::nullopt;
}

double expected_regret_integral_km(const CensoringDesign& design, const StepCDF& F,
                                   const CostParameters& cp) {
    const double q = cp.q;
    std::vector<double> cuts;
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    for (double x : design.levels()) cuts.push_back(x);
    for (double s : F.support()) cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (!(b > a) || a >= 1.0) continue;
        std::size_t k = design.piece_index(a);
        std::vector<double> prefix(k);
        for (std::size_t j = 1; j <= k; ++j) prefix[j - 1] = F(design.level(j));
        total += (b - a) * psi_km(design, q, k, prefix, F(a));
    }
    return (cp.c_u + cp.c_o) * total;
}

} // namespace nvregret
