#include "nvregret/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nvregret {

namespace {

constexpr long kFactTableSize = 10002;

const std::vector<double>& factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kFactTableSize);
        for (long i = 0; i < kFactTableSize; ++i)
            t[static_cast<std::size_t>(i)] = std::lgamma(static_cast<double>(i) + 1.0);
        return t;
    }();
    return table;
}

// Sum of binomial(n, p) probabilities over j in [a, b], accumulated outward
// from the largest term so the result is a well-conditioned descending sum.
double binom_range_sum(long a, long b, long n, double p) {
    if (a > b) return 0.0;
    double logp = std::log(p);
    double log1mp = std::log1p(-p);
    long peak = static_cast<long>(std::floor((static_cast<double>(n) + 1.0) * p));
    peak = std::clamp(peak, a, b);
    double log_peak = log_choose(n, peak) + static_cast<double>(peak) * logp +
                      static_cast<double>(n - peak) * log1mp;
    double t0 = std::exp(log_peak);
    double sum = t0;
    double ratio_up = p / (1.0 - p);
    // terms above the peak: t(j) = t(j-1) * (n-j+1)/j * p/(1-p)
    double t = t0;
    for (long j = peak + 1; j <= b; ++j) {
        t *= ratio_up * static_cast<double>(n - j + 1) / static_cast<double>(j);
        sum += t;
        if (t < sum * 1e-18) break;
    }
    // terms below the peak
    t = t0;
    for (long j = peak - 1; j >= a; --j) {
        t *= static_cast<double>(j + 1) / (ratio_up * static_cast<double>(n - j));
        sum += t;
        if (t < sum * 1e-18) break;
    }
    return sum;
}

} // namespace

long ceil_count(double q, long n) {
    return static_cast<long>(std::ceil(q * static_cast<double>(n) - 1e-9));
}

double log_factorial(long n) {
    if (n < 0) throw invalid_parameter_error("log_factorial: negative argument");
    if (n < kFactTableSize) return factorial_table()[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_choose(long n, long k) {
    if (k < 0 || k > n) throw invalid_parameter_error("log_choose: k outside [0,n]");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double bernstein_tail(long r, long n, double p) {
    if (n < 0) throw invalid_parameter_error("bernstein_tail: n must be nonnegative");
    if (r <= 0) return 1.0;
    if (r > n) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    if (static_cast<double>(r) <= static_cast<double>(n) * p) {
        // upper tail contains the mode; the lower tail is the small side
        double lower = binom_range_sum(0, r - 1, n, p);
        return std::max(1.0 - lower, 0.0);
    }
    return std::min(binom_range_sum(r, n, n, p), 1.0);
}

PsiSpec::PsiSpec(long n_total_, long sigma_, double q_)
    : n_total(n_total_), sigma(sigma_), q(q_) {
    if (n_total < 1) throw invalid_parameter_error("PsiSpec: n_total must be >= 1");
    if (sigma < 0 || sigma > n_total)
        throw invalid_parameter_error("PsiSpec: sigma outside [0, n_total]");
    if (!(q > 0.0) || !(q < 1.0)) throw invalid_parameter_error("PsiSpec: q outside (0,1)");
}

double psi_bsaa(const PsiSpec& spec, double v) {
    double tail = bernstein_tail(spec.r(), spec.m(), v);
    return (1.0 - tail) * (v - spec.q) + std::max(spec.q - v, 0.0);
}

double psi_lipschitz_bound(long n_total) {
    if (n_total < 0) throw invalid_parameter_error("psi_lipschitz_bound: negative n");
    return static_cast<double>(n_total) + 2.0;
}

} // namespace nvregret
