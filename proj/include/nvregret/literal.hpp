#pragma once

#include <string>
#include <vector>

#include "nvregret/core.hpp"

namespace nvregret {

// `level:count[,level:count...]`, levels ascending in [0,1], counts >= 1.
CensoringDesign parse_design(const std::string& text);

// `point:prob[,point:prob...]`, probabilities summing to 1 within 1e-9.
StepCDF parse_distribution(const std::string& text);

// Semicolon-separated groups `level|s1,s2u,...`; a trailing `u` marks an
// uncensored observation.
SampleSet parse_sample_set(const std::string& text);

// StepCDF rendered back as a `point:prob` literal.
std::string distribution_literal(const StepCDF& F);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

} // namespace nvregret
