#include "nvregret/bsaa_regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nvregret {

namespace {

struct Piece {
    double len; // x_{k+1} - x_k
    long r;     // ceil(qn) - sigma_k
    long m;     // n - sigma_k
};

std::vector<Piece> make_pieces(const CensoringDesign& design, double q) {
    long n = design.total();
    long cq = ceil_count(q, n);
    std::size_t K = design.num_levels();
    std::vector<Piece> pieces(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        pieces[k].len = design.breakpoint(k + 1) - design.breakpoint(k);
        pieces[k].r = cq - design.cumulative(k);
        pieces[k].m = n - design.cumulative(k);
    }
    return pieces;
}

double piece_psi(const Piece& p, double q, double v) {
    double tail = bernstein_tail(p.r, p.m, v);
    return (1.0 - tail) * (v - q) + std::max(q - v, 0.0);
}

// Maximizes fn over [lo, hi] by golden-section sampling; returns the best
// sampled point. Deterministic and never below fn at either endpoint.
template <class Fn>
std::pair<double, double> golden_max(Fn&& fn, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double best_x = lo, best_v = fn(lo);
    double v_hi = fn(hi);
    if (v_hi > best_v) { best_v = v_hi; best_x = hi; }
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
        if (f1 >= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = fn(x2);
        }
        if (f1 > best_v) { best_v = f1; best_x = x1; }
        if (f2 > best_v) { best_v = f2; best_x = x2; }
    }
    return {best_x, best_v};
}

StepCDF three_point_witness(double atom_x, double v, double w) {
    std::vector<double> pts;
    std::vector<double> cdf;
    if (atom_x <= 0.0) {
        pts = {0.0, 1.0};
        cdf = {w, 1.0};
    } else if (atom_x >= 1.0) {
        pts = {0.0, 1.0};
        cdf = {v, 1.0};
    } else {
        pts = {0.0, atom_x, 1.0};
        cdf = {v, w, 1.0};
    }
    return StepCDF(std::move(pts), std::move(cdf));
}

} // namespace

double bsaa_action_cdf(const CensoringDesign& design, double q, std::size_t k, double Fz) {
    if (k > design.num_levels())
        throw invalid_parameter_error("bsaa_action_cdf: piece index out of range");
    if (Fz < 0.0 || Fz > 1.0)
        throw invalid_parameter_error("bsaa_action_cdf: Fz outside [0,1]");
    long n = design.total();
    long sigma = design.cumulative(k);
    return bernstein_tail(ceil_count(q, n) - sigma, n - sigma, Fz);
}

RegretCertificate worst_case_regret_bsaa(const CensoringDesign& design,
                                         const CostParameters& cp, double tol) {
    if (!(tol > 0.0)) throw invalid_parameter_error("worst_case_regret_bsaa: tol must be positive");
    const double q = cp.q;
    const double scale = cp.c_u + cp.c_o;
    const double tol_norm = tol / scale;
    const long n = design.total();
    const std::size_t K = design.num_levels();
    const std::vector<Piece> pieces = make_pieces(design, q);

    const double delta = tol_norm / psi_lipschitz_bound(n);
    const long nv = std::max(1L, static_cast<long>(std::ceil(q / delta)));
    const long nw = std::max(1L, static_cast<long>(std::ceil((1.0 - q) / delta)));

    // sup over v in [0,q] of the prefix sums A_i(v), streamed over the grid
    std::vector<double> bestA(K + 1, -std::numeric_limits<double>::infinity());
    std::vector<double> argA(K + 1, 0.0);
    for (long j = 0; j <= nv; ++j) {
        double v = q * static_cast<double>(j) / static_cast<double>(nv);
        double prefix = 0.0;
        for (std::size_t k = 0; k <= K; ++k) {
            if (pieces[k].len > 0.0) prefix += pieces[k].len * piece_psi(pieces[k], q, v);
            if (prefix > bestA[k]) { bestA[k] = prefix; argA[k] = v; }
        }
    }

    // sup over w in [q,1] of the suffix sums; index i+1 so slot 0 is the
    // all-upper branch (every piece at w)
    std::vector<double> bestB(K + 2, -std::numeric_limits<double>::infinity());
    std::vector<double> argB(K + 2, q);
    std::vector<double> psis(K + 1, 0.0);
    for (long j = 0; j <= nw; ++j) {
        double w = q + (1.0 - q) * static_cast<double>(j) / static_cast<double>(nw);
        for (std::size_t k = 0; k <= K; ++k)
            psis[k] = pieces[k].len > 0.0 ? piece_psi(pieces[k], q, w) : 0.0;
        double suffix = 0.0;
        if (suffix > bestB[K + 1]) { bestB[K + 1] = suffix; argB[K + 1] = w; }
        for (std::size_t k = K + 1; k-- > 0;) {
            suffix += pieces[k].len * psis[k];
            if (suffix > bestB[k]) { bestB[k] = suffix; argB[k] = w; }
        }
    }

    // local refinement per piece; conservative error bound stays at tol
    auto eval_A = [&](std::size_t i, double v) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k)
            if (pieces[k].len > 0.0) s += pieces[k].len * piece_psi(pieces[k], q, v);
        return s;
    };
    auto eval_B = [&](std::size_t slot, double w) {
        double s = 0.0;
        for (std::size_t k = slot; k <= K; ++k)
            if (pieces[k].len > 0.0) s += pieces[k].len * piece_psi(pieces[k], q, w);
        return s;
    };
    for (std::size_t i = 0; i <= K; ++i) {
        auto [x, val] = golden_max([&](double v) { return eval_A(i, v); },
                                   std::max(0.0, argA[i] - delta), std::min(q, argA[i] + delta));
        if (val > bestA[i]) { bestA[i] = val; argA[i] = x; }
    }
    for (std::size_t slot = 0; slot <= K + 1; ++slot) {
        auto [x, val] = golden_max([&](double w) { return eval_B(slot, w); },
                                   std::max(q, argB[slot] - delta), std::min(1.0, argB[slot] + delta));
        if (val > bestB[slot]) { bestB[slot] = val; argB[slot] = x; }
    }

    // pick the crossing index; ties prefer the smallest i, and the all-upper
    // branch only wins on strict improvement
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    double v_star = 0.0, w_star = q;
    for (std::size_t i = 0; i <= K; ++i) {
        double cand = bestA[i] + bestB[i + 1];
        if (cand > best) {
            best = cand;
            best_i = static_cast<int>(i);
            v_star = argA[i];
            w_star = argB[i + 1];
        }
    }
    if (bestB[0] > best) {
        best = bestB[0];
        best_i = -1;
        v_star = argB[0];
        w_star = argB[0];
    }

    double atom_x = design.breakpoint(static_cast<std::size_t>(best_i + 1));
    RegretCertificate cert{best * scale,
                           best_i,
                           v_star,
                           w_star,
                           three_point_witness(atom_x, v_star, w_star),
                           tol,
                           std::nullopt};
    return cert;
}

double expected_regret_integral_bsaa(const CensoringDesign& design, const StepCDF& F,
                                     const CostParameters& cp) {
    const double q = cp.q;
    std::vector<double> cuts;
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    for (double x : design.levels()) cuts.push_back(x);
    for (double s : F.support()) cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const std::vector<Piece> pieces = make_pieces(design, q);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (!(b > a) || a >= 1.0) continue;
        std::size_t k = design.piece_index(a);
        total += (b - a) * piece_psi(pieces[k], q, F(a));
    }
    return (cp.c_u + cp.c_o) * total;
}

} // namespace nvregret
