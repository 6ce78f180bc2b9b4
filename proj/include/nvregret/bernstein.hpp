#pragma once

#include "nvregret/errors.hpp"

namespace nvregret {

// ceil(q * n) computed with a small downward nudge so that products like
// 0.8 * 5 that are integers up to rounding do not get bumped to the next
// integer.
long ceil_count(double q, long n);

// log(n!) for n >= 0.
double log_factorial(long n);

// log binomial coefficient.
double log_choose(long n, long k);

// Upper tail of a Binomial(n, p): P(X >= r).
//
// Conventions: 1 for r <= 0, 0 for r > n. Evaluated by summing exponentiated
// log-binomial terms outward from the largest term; when r sits below the
// mean the complementary lower tail is summed instead to avoid cancellation.
double bernstein_tail(long r, long n, double p);

// Parameters of the scalar kernel for one design piece: total sample count,
// cumulative count sigma at the piece, and the critical fractile.
struct PsiSpec {
    long n_total;
    long sigma;
    double q;

    PsiSpec(long n_total_, long sigma_, double q_);

    long r() const { return ceil_count(q, n_total) - sigma; }
    long m() const { return n_total - sigma; }
};

// (1 - B_{r,m}(v)) * (v - q) + (q - v)^+ with r, m from the spec above.
double psi_bsaa(const PsiSpec& spec, double v);

// Uniform Lipschitz bound (n + 2) for the psi kernels; used to size grid
// meshes so that grid error stays below a requested tolerance.
double psi_lipschitz_bound(long n_total);

} // namespace nvregret
