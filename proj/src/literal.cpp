#include "nvregret/literal.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace nvregret {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (true) {
        auto next = text.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

double parse_number(const std::string& token, const char* what) {
    if (token.empty()) throw invalid_input_error(std::string("empty ") + what);
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
        throw invalid_input_error(std::string("malformed ") + what + ": " + token);
    return v;
}

long parse_count(const std::string& token) {
    if (token.empty()) throw invalid_input_error("empty count");
    char* end = nullptr;
    long v = std::strtol(token.c_str(), &end, 10);
    if (end != token.c_str() + token.size())
        throw invalid_input_error("malformed count: " + token);
    return v;
}

} // namespace

CensoringDesign parse_design(const std::string& text) {
    std::vector<double> levels;
    std::vector<long> counts;
    for (const auto& part : split(text, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw invalid_input_error("design entry must be level:count, got: " + part);
        levels.push_back(parse_number(part.substr(0, colon), "level"));
        counts.push_back(parse_count(part.substr(colon + 1)));
    }
    return CensoringDesign(std::move(levels), std::move(counts));
}

StepCDF parse_distribution(const std::string& text) {
    std::vector<double> points, probs;
    for (const auto& part : split(text, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw invalid_input_error("distribution entry must be point:prob, got: " + part);
        points.push_back(parse_number(part.substr(0, colon), "point"));
        probs.push_back(parse_number(part.substr(colon + 1), "probability"));
    }
    return StepCDF::from_point_masses(points, probs);
}

SampleSet parse_sample_set(const std::string& text) {
    std::vector<double> levels;
    std::vector<long> counts;
    std::vector<std::vector<Observation>> groups;
    for (const auto& grp : split(text, ';')) {
        auto bar = grp.find('|');
        if (bar == std::string::npos)
            throw invalid_input_error("sample group must be level|obs,...: " + grp);
        double level = parse_number(grp.substr(0, bar), "level");
        std::vector<Observation> obs;
        for (auto tok : split(grp.substr(bar + 1), ',')) {
            bool unc = !tok.empty() && tok.back() == 'u';
            if (unc) tok.pop_back();
            obs.push_back(Observation{parse_number(tok, "sale"), unc});
        }
        if (obs.empty()) throw invalid_input_error("empty sample group");
        levels.push_back(level);
        counts.push_back(static_cast<long>(obs.size()));
        groups.push_back(std::move(obs));
    }
    return SampleSet(CensoringDesign(std::move(levels), std::move(counts)), std::move(groups));
}

std::string distribution_literal(const StepCDF& F) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < F.size(); ++i) {
        double p = F.mass_at(i);
        if (p == 0.0 && F.size() > 1) continue;
        if (!first) out << ',';
        out << format_double(F.support()[i]) << ':' << format_double(p);
        first = false;
    }
    return out.str();
}

std::string format_double(double value) {
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace nvregret
