#pragma once

#include <optional>
#include <vector>

#include "nvregret/bernstein.hpp"
#include "nvregret/certificate.hpp"
#include "nvregret/core.hpp"
#include "nvregret/grid.hpp"

namespace nvregret {

// Interval count profile of the product-limit estimator: N_j uncensored
// observations falling in each partition cell, C_j observations censored at
// level j, and the resulting survival value G.
struct CountProfile {
    std::vector<long> N; // size k+1
    std::vector<long> C; // size k
    double G = 1.0;
};

// G = prod_j (n - sum_{r<=j} N_r - sum_{r<j} C_r) / (n - sum_{r<j} N_r - sum_{r<j} C_r),
// with cells whose denominator vanishes contributing factor 1.
double survival_product(long n, const std::vector<long>& N, const std::vector<long>& C);

CountProfile make_count_profile(long n, std::vector<long> N, std::vector<long> C);

// P(product-limit action <= z) for z in [x_k, x_{k+1}) when the demand CDF
// has values f_prefix = (F(x_1), ..., F(x_k)) and F(z) = v. Computed by
// enumerating the censored/uncensored count configurations of every sample
// group; piece k = 0 reduces to a binomial upper tail.
double km_action_cdf(const CensoringDesign& design, double q, std::size_t k,
                     const std::vector<double>& f_prefix, double v);

// Same enumeration but summing the probability of {G <= g_threshold}; with a
// threshold >= 1 this returns the total multinomial mass (handy for
// normalization checks).
double km_count_mass(const CensoringDesign& design, std::size_t k,
                     const std::vector<double>& f_prefix, double v, double g_threshold);

// (1 - km_action_cdf(...)) * (v - q) + (q - v)^+.
double psi_km(const CensoringDesign& design, double q, std::size_t k,
              const std::vector<double>& f_prefix, double v);

// Worst-case expected regret of the product-limit policy: maximizes the
// piecewise objective over the monotone lattice at mesh grid.mesh_v with one
// local refinement pass. grid_error_bound reports the lattice mesh.
RegretCertificate worst_case_regret_km(const CensoringDesign& design,
                                       const CostParameters& cp, const GridSpec& grid);

// Smallest n <= n_cap for which the single-level design (all n samples at x)
// has worst-case regret at most target; nullopt when unattainable.
std::optional<long> sample_complexity_km(double x, double q, double target, long n_cap,
                                         const GridSpec& grid);

// Expected regret of the product-limit policy under F through the action-CDF
// integral representation (finite sum for step F).
double expected_regret_integral_km(const CensoringDesign& design, const StepCDF& F,
                                   const CostParameters& cp);

} // namespace nvregret
