#include "gptlab/serialize.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace gptlab {

json theory_to_json(const TheorySpec& spec) {
    return json{{"d", spec.d},
                {"J", spec.J},
                {"restriction", spec.restriction == Restriction::PureStateDual
                                    ? "pure-state-dual"
                                    : "unrestricted"}};
}

json effect_to_json(const Effect& effect) {
    std::vector<double> e(effect.e.data(), effect.e.data() + effect.e.size());
    return json{{"e", e}, {"c", effect.c}};
}

json measurement_to_json(const Measurement& m) {
    json effects = json::array();
    for (const Effect& eff : m.effects) effects.push_back(effect_to_json(eff));
    return json{{"effects", effects}};
}

json validation_to_json(const ValidationReport& report) {
    return json{{"valid", report.valid},
                {"violations", report.violations},
                {"min_value", report.min_value},
                {"max_value", report.max_value}};
}

json artifact_envelope(const std::string& command, const TheorySpec& spec,
                       std::uint64_t seed, double tol) {
    return json{{"command", command},
                {"theory", theory_to_json(spec)},
                {"seed", seed},
                {"tol", tol},
                {"version", kArtifactVersion}};
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

}  // namespace gptlab
