#pragma once

// Effects E(w) = e.w + c, measurements, validity over the pure-state orbit,
// and the LP-based perfect-distinguishability oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "gptlab/gpt.hpp"

namespace gptlab {

struct Effect {
    VectorXd e;
    double c = 0;
};

struct Measurement {
    std::vector<Effect> effects;
};

double evaluate(const Effect& effect, const StateVector& state);

// Global extrema of psi -> E(Omega_psi) over the d=2 orbit: dense (s,t) grid
// plus Newton refinement to |grad| < 1e-10. Extremizers within 1e-7 of the
// global value are all returned.
struct OrbitExtrema {
    double min_value = 0, max_value = 0;
    std::vector<std::pair<double, double>> argmin, argmax;  // (s, t) angles
    std::vector<VectorXd> argmin_states, argmax_states;
};

OrbitExtrema effect_extrema_over_orbit(const Theory& theory, const Effect& effect,
                                       int grid = 256);

struct ValidationReport {
    bool valid = false;
    std::vector<std::string> violations;
    double min_value = 0, max_value = 0;  // worst effect values seen
};

ValidationReport validate_measurement(const Theory& theory, const Measurement& m);

// Default pure-state witness sample: 64x64 orbit grid for d=2, 2000 seeded
// Haar states for d >= 3.
std::vector<StateVector> default_witness(const Theory& theory,
                                         std::uint64_t seed = 2000);

struct LpDistinguishResult {
    bool feasible = false;
    Measurement measurement;          // verified, when feasible
    double infeasibility_margin = 0;  // phase-1 residual, when infeasible
    int rounds = 0;
    std::string note;                 // nonempty on stalled/unresolved solves
};

// Perfectly-distinguishing measurement for the given states: E_i(w_j) =
// delta_ij with validity enforced on sampled witnesses and certified by a
// cutting-plane loop against orbit extrema (max 20 rounds).
LpDistinguishResult distinguishability_lp(const Theory& theory,
                                          const std::vector<StateVector>& states,
                                          std::vector<StateVector> witness = {});

struct MaxDistResult {
    int lower_bound = 0;
    std::vector<StateVector> states;
    Measurement measurement;
};

// Greedy search for large perfectly distinguishable tuples; budget caps the
// number of LP solves. Reports a certified lower bound only.
MaxDistResult max_distinguishable_search(const Theory& theory, int budget,
                                         std::uint64_t seed = 77);

// The restricted theory's effect at ray psi: (Omega_psi / 2, 1/2).
Effect pure_state_dual_effect(const Theory& theory, const PureRay& psi);

}  // namespace gptlab
