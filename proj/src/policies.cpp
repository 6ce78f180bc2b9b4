#include "nvregret/policies.hpp"

#include <algorithm>
#include <cmath>

namespace nvregret {

double bsaa_decide(const SampleSet& samples, double q) {
    long n = samples.total();
    if (n < 1) throw invalid_input_error("bsaa_decide: empty sample set");
    std::vector<double> sales = samples.pooled_sales();
    std::sort(sales.begin(), sales.end());
    long rank = static_cast<long>(std::ceil(q * static_cast<double>(n) - 1e-9));
    rank = std::clamp(rank, 1L, n);
    return sales[static_cast<std::size_t>(rank - 1)];
}

KMEstimate km_cdf(const SampleSet& samples) {
    long n = samples.total();
    if (n < 1) throw invalid_input_error("km_cdf: empty sample set");
    std::vector<Observation> obs = samples.all_observations();
    // uncensored before censored on sale ties; stable within each class
    std::stable_sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) {
        if (a.sale != b.sale) return a.sale < b.sale;
        return a.uncensored && !b.uncensored;
    });

    std::vector<double> support;
    std::vector<double> cdf;
    double survival = 1.0;
    std::size_t i = 0;
    while (i < obs.size()) {
        double y = obs[i].sale;
        while (i < obs.size() && obs[i].sale == y) {
            if (obs[i].uncensored) {
                long idx = static_cast<long>(i) + 1; // 1-based order statistic
                survival *= static_cast<double>(n - idx) / static_cast<double>(n - idx + 1);
            }
            ++i;
        }
        support.push_back(y);
        cdf.push_back(1.0 - survival);
    }
    if (support.back() == 1.0) {
        cdf.back() = 1.0;
    } else {
        support.push_back(1.0);
        cdf.push_back(1.0);
    }
    return KMEstimate{StepCDF(std::move(support), std::move(cdf)), std::move(obs)};
}

double km_decide(const SampleSet& samples, double q) {
    KMEstimate est = km_cdf(samples);
    const auto& support = est.cdf.support();
    const auto& cdf = est.cdf.cdf_values();
    for (std::size_t i = 0; i < support.size(); ++i)
        if (cdf[i] >= q - kEqTol) return support[i];
    return 1.0;
}

} // namespace nvregret
