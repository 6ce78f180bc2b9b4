#pragma once

#include <cstdint>

#include "nvregret/core.hpp"

namespace nvregret {

enum class Policy { bsaa, km };

enum class OracleMode { exact, monte_carlo };

struct OracleEstimate {
    double mean = 0.0;
    double std_error = 0.0; // 0 in exact mode
    OracleMode mode = OracleMode::exact;
    long trials = 0;
};

// Expected regret of the policy on the design under demand distribution F,
// computed by enumerating every demand tuple with its product probability,
// censoring per the design, running the policy and averaging exactly.
// Requires |support(F)|^n <= 1e7; larger instances raise capacity_error.
OracleEstimate exact_expected_regret(Policy policy, const CensoringDesign& design,
                                     const StepCDF& F, const CostParameters& cp);

// Seeded Monte-Carlo estimate of the same expectation. Replays are generated
// by a counter-based SplitMix64 stream keyed on (seed, trial index, draw
// index), so results are bit-reproducible and independent of threading.
OracleEstimate mc_expected_regret(Policy policy, const CensoringDesign& design,
                                  const StepCDF& F, const CostParameters& cp, long trials,
                                  std::uint64_t seed);

} // namespace nvregret
