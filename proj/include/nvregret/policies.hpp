#pragma once

#include <vector>

#include "nvregret/core.hpp"

namespace nvregret {

// Product-limit CDF estimate plus the ordered merged observation list it was
// built from (kept for audit).
struct KMEstimate {
    StepCDF cdf;
    std::vector<Observation> ordered;
};

// Lower empirical q-quantile of the pooled sale values; censoring flags are
// ignored entirely.
double bsaa_decide(const SampleSet& samples, double q);

// Kaplan-Meier product-limit estimate of the demand CDF. Observations are
// sorted ascending by sale with uncensored values placed before censored
// ones on ties (stable within each class); the CDF at 1 is forced to 1.
KMEstimate km_cdf(const SampleSet& samples);

// Lower q-quantile of km_cdf(samples); 1 if the estimate never reaches q
// before the endpoint.
double km_decide(const SampleSet& samples, double q);

} // namespace nvregret
