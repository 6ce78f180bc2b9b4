#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nvregret/core.hpp"

namespace nvregret {

// A point of the monotone chain f0+ <= f1 <= f1+ <= ... <= fK <= fK+ <= 1
// describing a candidate worst-case CDF at and just after each design level.
struct MonotonePoint {
    double f0_plus = 0.0;
    std::vector<std::pair<double, double>> levels; // (f_k, f_k_plus), k = 1..K
};

// Worst-case regret value together with the maximizer that witnesses it.
//
// For the pooled-quantile policy the maximizer is a crossing piece index with
// one CDF level on each side of q (piece_index == -1 means every piece sits
// at the upper level). For the product-limit policy the maximizer is the
// monotone chain stored in km_point. The witness distribution realizes the
// maximizer; its exact expected regret matches `value` up to
// grid_error_bound.
struct RegretCertificate {
    double value = 0.0;
    int piece_index = -1;
    double v_star = 0.0;
    double w_star = 0.0;
    StepCDF witness;
    double grid_error_bound = 0.0;
    std::optional<MonotonePoint> km_point;
};

} // namespace nvregret
