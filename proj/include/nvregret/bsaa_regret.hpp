#pragma once

#include "nvregret/bernstein.hpp"
#include "nvregret/certificate.hpp"
#include "nvregret/core.hpp"

namespace nvregret {

// P(pooled-quantile action <= z) for z in [x_k, x_{k+1}) when F(z) = Fz:
// the binomial upper tail B_{ceil(qn)-sigma_k, n-sigma_k}(Fz).
double bsaa_action_cdf(const CensoringDesign& design, double q, std::size_t k, double Fz);

// Exact worst-case expected regret of the pooled-quantile policy, found by
// scanning the crossing piece index and two 1-D value grids sized from the
// (n+2)-Lipschitz bound so that the reported error is at most tol. The
// witness is the maximizing three-point distribution.
RegretCertificate worst_case_regret_bsaa(const CensoringDesign& design,
                                         const CostParameters& cp, double tol);

// Expected regret of the pooled-quantile policy under F, evaluated through
// the action-CDF integral representation (finite sum for step F).
double expected_regret_integral_bsaa(const CensoringDesign& design, const StepCDF& F,
                                     const CostParameters& cp);

} // namespace nvregret
