#include "nvregret/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nvregret/parallel.hpp"
#include "nvregret/policies.hpp"

namespace nvregret {

namespace {

constexpr double kEnumCap = 1e7;

// finalizer-over-Weyl-sequence uniform draw: deterministic pure function of
// (seed, counter), so trial blocks can be generated in any order
double unit_draw(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct SlotLayout {
    std::vector<double> level_per_slot; // censoring level of each sample slot
    std::vector<std::size_t> group_of_slot;
};

SlotLayout make_slots(const CensoringDesign& design) {
    SlotLayout s;
    for (std::size_t k = 1; k <= design.num_levels(); ++k)
        for (long i = 0; i < design.count(k); ++i) {
            s.level_per_slot.push_back(design.level(k));
            s.group_of_slot.push_back(k);
        }
    return s;
}

double run_policy(Policy policy, const CensoringDesign& design, const SlotLayout& slots,
                  const std::vector<double>& demands, double q) {
    std::vector<std::vector<Observation>> groups(design.num_levels());
    for (std::size_t k = 1; k <= design.num_levels(); ++k)
        groups[k - 1].reserve(static_cast<std::size_t>(design.count(k)));
    for (std::size_t i = 0; i < demands.size(); ++i)
        groups[slots.group_of_slot[i] - 1].push_back(censor(demands[i], slots.level_per_slot[i]));
    SampleSet samples(design, std::move(groups));
    return policy == Policy::bsaa ? bsaa_decide(samples, q) : km_decide(samples, q);
}

} // namespace

OracleEstimate exact_expected_regret(Policy policy, const CensoringDesign& design,
                                     const StepCDF& F, const CostParameters& cp) {
    const long n = design.total();
    const std::size_t s = F.size();
    if (std::pow(static_cast<double>(s), static_cast<double>(n)) > kEnumCap)
        throw capacity_error(
            "exact_expected_regret: support^n exceeds 1e7; use Monte-Carlo mode");

    std::vector<double> probs(s);
    for (std::size_t i = 0; i < s; ++i) probs[i] = F.mass_at(i);
    const std::vector<double>& pts = F.support();
    const SlotLayout slots = make_slots(design);
    const double opt_cost = optimal_decision(F, cp).cost;

    std::uint64_t tuples = 1;
    for (long i = 0; i < n; ++i) tuples *= s;

    // fixed-size blocks summed in index order keep the reduction deterministic
    const std::uint64_t block = 4096;
    const std::uint64_t nblocks = (tuples + block - 1) / block;
    std::vector<double> partial(nblocks, 0.0);

    parallel_for(nblocks, [&](std::size_t b) {
        std::vector<std::size_t> digits(static_cast<std::size_t>(n));
        std::vector<double> demands(static_cast<std::size_t>(n));
        double local = 0.0;
        std::uint64_t lo = static_cast<std::uint64_t>(b) * block;
        std::uint64_t hi = std::min(lo + block, tuples);
        for (std::uint64_t t = lo; t < hi; ++t) {
            std::uint64_t code = t;
            double p = 1.0;
            for (long i = 0; i < n; ++i) {
                std::size_t d = static_cast<std::size_t>(code % s);
                code /= s;
                digits[static_cast<std::size_t>(i)] = d;
                p *= probs[d];
            }
            if (p == 0.0) continue;
            for (long i = 0; i < n; ++i)
                demands[static_cast<std::size_t>(i)] = pts[digits[static_cast<std::size_t>(i)]];
            double action = run_policy(policy, design, slots, demands, cp.q);
            double cost = expected_cost(action, F, cp);
            local += p * std::max(cost - opt_cost, 0.0);
        }
        partial[b] = local;
    });

    double mean = 0.0;
    for (double v : partial) mean += v;
    return OracleEstimate{mean, 0.0, OracleMode::exact, static_cast<long>(tuples)};
}

OracleEstimate mc_expected_regret(Policy policy, const CensoringDesign& design,
                                  const StepCDF& F, const CostParameters& cp, long trials,
                                  std::uint64_t seed) {
    if (trials < 1) throw invalid_parameter_error("mc_expected_regret: trials must be >= 1");
    const long n = design.total();
    const std::size_t s = F.size();
    std::vector<double> cum(s);
    double running = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        running += F.mass_at(i);
        cum[i] = running;
    }
    cum.back() = 1.0;
    const std::vector<double>& pts = F.support();
    const SlotLayout slots = make_slots(design);
    const double opt_cost = optimal_decision(F, cp).cost;

    const std::uint64_t block = 4096;
    const std::uint64_t ut = static_cast<std::uint64_t>(trials);
    const std::uint64_t nblocks = (ut + block - 1) / block;
    struct BlockSums {
        double sum = 0.0, sumsq = 0.0, lo = 1e300, hi = -1e300;
    };
    std::vector<BlockSums> partial(nblocks);

    parallel_for(nblocks, [&](std::size_t b) {
        std::vector<double> demands(static_cast<std::size_t>(n));
        BlockSums local;
        std::uint64_t lo = static_cast<std::uint64_t>(b) * block;
        std::uint64_t hi = std::min(lo + block, ut);
        for (std::uint64_t t = lo; t < hi; ++t) {
            for (long i = 0; i < n; ++i) {
                double u = unit_draw(seed, t * static_cast<std::uint64_t>(n) +
                                               static_cast<std::uint64_t>(i));
                std::size_t idx = static_cast<std::size_t>(
                    std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
                if (idx >= s) idx = s - 1;
                demands[static_cast<std::size_t>(i)] = pts[idx];
            }
            double action = run_policy(policy, design, slots, demands, cp.q);
            double r = std::max(expected_cost(action, F, cp) - opt_cost, 0.0);
            local.sum += r;
            local.sumsq += r * r;
            local.lo = std::min(local.lo, r);
            local.hi = std::max(local.hi, r);
        }
        partial[b] = local;
    });

    double sum = 0.0, sumsq = 0.0, lo = 1e300, hi = -1e300;
    for (const auto& p : partial) {
        sum += p.sum;
        sumsq += p.sumsq;
        lo = std::min(lo, p.lo);
        hi = std::max(hi, p.hi);
    }
    double mean = sum / static_cast<double>(trials);
    double se = 0.0;
    if (trials > 1 && hi > lo) {
        double var = (sumsq - sum * mean) / static_cast<double>(trials - 1);
        se = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    }
    return OracleEstimate{mean, se, OracleMode::monte_carlo, trials};
}

} // namespace nvregret
