#pragma once

#include <cstddef>
#include <vector>

#include "nvregret/errors.hpp"

namespace nvregret {

// Absolute slack used wherever a CDF value is compared against the critical
// fractile q (values frequently sit exactly on the boundary).
inline constexpr double kEqTol = 1e-12;

// q = c_u / (c_u + c_o). Throws invalid_parameter_error unless both costs are
// strictly positive.
double critical_fractile(double c_u, double c_o);

// Per-unit underage/overage costs and the derived critical fractile.
struct CostParameters {
    double c_u;
    double c_o;
    double q;

    CostParameters(double underage, double overage)
        : c_u(underage), c_o(overage), q(critical_fractile(underage, overage)) {}
};

// Finite-support right-continuous distribution function on [0,1].
//
// Mass may only sit at the listed support points; evaluation below the first
// support point returns 0 and the final CDF value is always 1.
class StepCDF {
public:
    // support strictly ascending within [0,1]; values nondecreasing, last == 1
    // (within 1e-9, snapped exactly).
    StepCDF(std::vector<double> support, std::vector<double> cdf_values);

    // Builds from point masses. Probabilities must be nonnegative and sum to
    // 1 within 1e-9.
    static StepCDF from_point_masses(const std::vector<double>& points,
                                     const std::vector<double>& probs);

    // F(z): value at the largest support point <= z, 0 below all of them.
    double operator()(double z) const;

    // F(z^-): value just below z.
    double left_limit(double z) const;

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& cdf_values() const { return cdf_; }
    std::size_t size() const { return support_.size(); }

    // Probability mass carried by support point i.
    double mass_at(std::size_t i) const;

private:
    std::vector<double> support_;
    std::vector<double> cdf_;
};

// Historical inventory levels with per-level sample counts.
//
// Levels and cumulative counts are addressed 1-based (level(1) .. level(K)) to
// match the usual order-statistic conventions; breakpoint(k) augments the
// levels with breakpoint(0) = 0 and breakpoint(K+1) = 1.
class CensoringDesign {
public:
    CensoringDesign(std::vector<double> levels, std::vector<long> counts);

    std::size_t num_levels() const { return levels_.size(); } // K
    long total() const { return cum_.back(); }                // n

    double level(std::size_t k) const { return levels_[k - 1]; }   // x_k, 1 <= k <= K
    long count(std::size_t k) const { return counts_[k - 1]; }     // n_k
    long cumulative(std::size_t k) const { return cum_[k]; }       // sigma_k, 0 <= k <= K

    // x_0 = 0, x_1..x_K, x_{K+1} = 1.
    double breakpoint(std::size_t k) const;

    // Index k with breakpoint(k) <= z < breakpoint(k+1); for repeated levels
    // the largest such k, so the piece is never empty. Requires z in [0,1).
    std::size_t piece_index(double z) const;

    const std::vector<double>& levels() const { return levels_; }
    const std::vector<long>& counts() const { return counts_; }

private:
    std::vector<double> levels_;
    std::vector<long> counts_;
    std::vector<long> cum_; // cum_[k] = sigma_k, cum_[0] = 0
};

// One censored sales record: the observed sale and whether it equals demand.
struct Observation {
    double sale;
    bool uncensored;
};

// sale = min(demand, level); the observation is censored only when demand
// strictly exceeds the level.
Observation censor(double demand, double level);

// Observations grouped by design level. Group sizes must match the design's
// counts; censored observations must sit exactly at their level and
// uncensored ones at or below it.
class SampleSet {
public:
    SampleSet(CensoringDesign design, std::vector<std::vector<Observation>> groups);

    const CensoringDesign& design() const { return design_; }
    const std::vector<Observation>& group(std::size_t k) const { return groups_[k - 1]; }
    long total() const { return design_.total(); }

    // All sale values, in group order then input order.
    std::vector<double> pooled_sales() const;

    // All observations, in group order then input order.
    std::vector<Observation> all_observations() const;

private:
    CensoringDesign design_;
    std::vector<std::vector<Observation>> groups_;
};

// Expected newsvendor cost of ordering a against demand distribution F.
double expected_cost(double a, const StepCDF& F, const CostParameters& cp);

struct OptimalDecision {
    double action; // lower q-quantile of F
    double cost;
};

// Smallest support point u with F(u) >= q, and its expected cost.
OptimalDecision optimal_decision(const StepCDF& F, const CostParameters& cp);

// expected_cost(a) - optimal cost; always >= 0.
double regret(double a, const StepCDF& F, const CostParameters& cp);

} // namespace nvregret
