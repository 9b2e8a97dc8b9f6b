#pragma once

// Artifact emission: JSON (primary) and CSV (plot data). Every artifact
// carries the reproducibility envelope: theory spec, seed, tolerances, and
// artifact version.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "gptlab/effects.hpp"

namespace gptlab {

using nlohmann::json;

inline constexpr const char* kArtifactVersion = "0.4.0";

json theory_to_json(const TheorySpec& spec);
json effect_to_json(const Effect& effect);
json measurement_to_json(const Measurement& m);
json validation_to_json(const ValidationReport& report);

// The common envelope; command-specific payloads go under "result".
json artifact_envelope(const std::string& command, const TheorySpec& spec,
                       std::uint64_t seed, double tol);

// Writes to the path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace gptlab
