#include "nvregret/core.hpp"

#include <algorithm>
#include <cmath>

namespace nvregret {

double critical_fractile(double c_u, double c_o) {
    if (!(c_u > 0.0) || !(c_o > 0.0))
        throw invalid_parameter_error("costs must be strictly positive");
    return c_u / (c_u + c_o);
}

StepCDF::StepCDF(std::vector<double> support, std::vector<double> cdf_values)
    : support_(std::move(support)), cdf_(std::move(cdf_values)) {
    if (support_.empty() || support_.size() != cdf_.size())
        throw invalid_input_error("StepCDF: support and values must be nonempty and match");
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] < 0.0 || support_[i] > 1.0)
            throw invalid_input_error("StepCDF: support point outside [0,1]");
        if (i > 0 && !(support_[i] > support_[i - 1]))
            throw invalid_input_error("StepCDF: support must be strictly ascending");
        if (cdf_[i] < -kEqTol || cdf_[i] > 1.0 + 1e-9)
            throw invalid_input_error("StepCDF: CDF value outside [0,1]");
        if (i > 0 && cdf_[i] < cdf_[i - 1] - kEqTol)
            throw invalid_input_error("StepCDF: CDF values must be nondecreasing");
        cdf_[i] = std::clamp(cdf_[i], 0.0, 1.0);
    }
    if (std::fabs(cdf_.back() - 1.0) > 1e-9)
        throw invalid_input_error("StepCDF: final CDF value must equal 1");
    cdf_.back() = 1.0;
}

StepCDF StepCDF::from_point_masses(const std::vector<double>& points,
                                   const std::vector<double>& probs) {
    if (points.empty() || points.size() != probs.size())
        throw invalid_input_error("StepCDF: points and probabilities must be nonempty and match");
    std::vector<double> cdf(points.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (probs[i] < -kEqTol)
            throw invalid_input_error("StepCDF: negative probability");
        cum += std::max(probs[i], 0.0);
        cdf[i] = cum;
    }
    if (std::fabs(cum - 1.0) > 1e-9)
        throw invalid_input_error("StepCDF: probabilities must sum to 1");
    cdf.back() = 1.0;
    return StepCDF(points, std::move(cdf));
}

double StepCDF::operator()(double z) const {
    auto it = std::upper_bound(support_.begin(), support_.end(), z);
    if (it == support_.begin()) return 0.0;
    return cdf_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double StepCDF::left_limit(double z) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), z);
    if (it == support_.begin()) return 0.0;
    return cdf_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double StepCDF::mass_at(std::size_t i) const {
    double lo = (i == 0) ? 0.0 : cdf_[i - 1];
    return std::max(cdf_[i] - lo, 0.0);
}

CensoringDesign::CensoringDesign(std::vector<double> levels, std::vector<long> counts)
    : levels_(std::move(levels)), counts_(std::move(counts)) {
    if (levels_.empty() || levels_.size() != counts_.size())
        throw invalid_input_error("design: levels and counts must be nonempty and match");
    cum_.resize(levels_.size() + 1);
    cum_[0] = 0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i] < 0.0 || levels_[i] > 1.0)
            throw invalid_input_error("design: level outside [0,1]");
        if (i > 0 && levels_[i] < levels_[i - 1])
            throw invalid_input_error("design: levels must be ascending");
        if (counts_[i] < 1)
            throw invalid_input_error("design: counts must be positive");
        cum_[i + 1] = cum_[i] + counts_[i];
    }
}

double CensoringDesign::breakpoint(std::size_t k) const {
    if (k == 0) return 0.0;
    if (k == levels_.size() + 1) return 1.0;
    return levels_[k - 1];
}

std::size_t CensoringDesign::piece_index(double z) const {
    // number of levels <= z
    auto it = std::upper_bound(levels_.begin(), levels_.end(), z);
    return static_cast<std::size_t>(it - levels_.begin());
}

Observation censor(double demand, double level) {
    return Observation{std::min(demand, level), demand <= level};
}

SampleSet::SampleSet(CensoringDesign design, std::vector<std::vector<Observation>> groups)
    : design_(std::move(design)), groups_(std::move(groups)) {
    if (groups_.size() != design_.num_levels())
        throw invalid_input_error("sample set: group count must match design");
    for (std::size_t k = 1; k <= design_.num_levels(); ++k) {
        const auto& g = groups_[k - 1];
        if (static_cast<long>(g.size()) != design_.count(k))
            throw invalid_input_error("sample set: group size must match design count");
        double x = design_.level(k);
        for (const auto& obs : g) {
            if (obs.uncensored) {
                if (obs.sale > x)
                    throw invalid_input_error("sample set: uncensored sale above its level");
            } else if (obs.sale != x) {
                throw invalid_input_error("sample set: censored sale must equal its level");
            }
        }
    }
}

std::vector<double> SampleSet::pooled_sales() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total()));
    for (const auto& g : groups_)
        for (const auto& obs : g) out.push_back(obs.sale);
    return out;
}

std::vector<Observation> SampleSet::all_observations() const {
    std::vector<Observation> out;
    out.reserve(static_cast<std::size_t>(total()));
    for (const auto& g : groups_)
        for (const auto& obs : g) out.push_back(obs);
    return out;
}

double expected_cost(double a, const StepCDF& F, const CostParameters& cp) {
    double total = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        double p = F.mass_at(i);
        if (p == 0.0) continue;
        double d = F.support()[i];
        total += p * (cp.c_o * std::max(a - d, 0.0) + cp.c_u * std::max(d - a, 0.0));
    }
    return total;
}

OptimalDecision optimal_decision(const StepCDF& F, const CostParameters& cp) {
    const auto& cdf = F.cdf_values();
    std::size_t idx = 0;
    while (idx + 1 < cdf.size() && cdf[idx] < cp.q - kEqTol) ++idx;
    double action = F.support()[idx];
    return OptimalDecision{action, expected_cost(action, F, cp)};
}

double regret(double a, const StepCDF& F, const CostParameters& cp) {
    double r = expected_cost(a, F, cp) - optimal_decision(F, cp).cost;
    return std::max(r, 0.0);
}

} // namespace nvregret
