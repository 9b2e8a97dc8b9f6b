#pragma once

// Qubit-family phenomenology: the g(t) analysis, nonantipodal distinguishable
// pairs, bit symmetry, phase groups of maximal measurements, the two-bit
// guessing game, the three-state demo, and subspace restriction support.

#include <cstdint>
#include <string>
#include <vector>

#include "gptlab/effects.hpp"

namespace gptlab {

// Normalized kernel vector of the weight-basis D(X) for odd j. Entries sit at
// even offsets from the ends with the antisymmetric pattern
// (a_j, 0, a_{j-2}, 0, ..., 0, -a_{j-2}, 0, -a_j); sign fixed so a_j > 0.
struct XNullVector {
    int j = 0;
    std::vector<double> a;  // a_l for l = 1, 3, ..., j
    VectorXcd vec;          // the full weight-basis vector, unit norm

    double a_l(int l) const { return a.at((l - 1) / 2); }
};

XNullVector x_null_vector(int j);

// g(t) evaluated two independent ways (matrix form and sine series); throws
// if they disagree beyond 1e-9.
double g_of_t(int j, double t);

struct GExtremum {
    double t = 0;
    double value = 0;
    bool is_max = false;
};

// All global maxima and minima of g on [0, 2pi): dense grid (>= 1e5 points)
// plus Newton refinement, sorted by t.
std::vector<GExtremum> find_g_extrema(int j);

struct NonantipodalPair {
    StateVector omega_a, omega_b;  // E(omega_a) = 1, E(omega_b) = 0
    PureRay psi_a, psi_b;
    Measurement measurement;  // two outcomes {E, 1-E}, validated
    double overlap = 0;       // |<psi_a|psi_b>|
    double antipodal_gap = 0;  // ||Omega_a + Omega_b||
};

// Tight two-outcome measurement built from the X-tangent effect at the
// reference state. For a single odd block j >= 3 the distinguished pair is
// non-antipodal (and the underlying rays non-orthogonal); j = 1 degenerates
// to the antipodal X-eigenstate pair.
NonantipodalPair nonantipodal_pair(const Theory& theory);

struct CertifiedPair {
    PureRay psi_a, psi_b;
    double overlap = 0;
    std::string origin;
};

struct BitSymmetryReport {
    bool bit_symmetric = true;
    std::vector<CertifiedPair> pairs;
    // Indices into `pairs` of two certified pairs with different overlaps
    // (the violation witness), or -1.
    int witness_a = -1, witness_b = -1;
};

// Collects certified perfectly-distinguishable pure pairs and compares their
// ray overlaps; a reversible transformation preserves overlaps, so two
// certified pairs with different overlaps rule out bit symmetry.
BitSymmetryReport bit_symmetry_test(const Theory& theory, int samples = 1000,
                                    std::uint64_t seed = 41);

struct PhaseGroupReport {
    int lie_dimension = 0;
    bool discrete_swap = false;
};

// Lie dimension of {K in su(2) : e_i . D(K) = 0 for all effects}, plus the
// involutive swap candidate (psi -> phi_perp, phi -> psi_perp) when the
// distinguished rays are supplied.
PhaseGroupReport phase_group(const Theory& theory, const Measurement& m,
                             const PureRay* ray_a = nullptr,
                             const PureRay* ray_b = nullptr);

struct GameReport {
    double p_guess_a = 0;
    double p_guess_a_prime = 0;
    std::string strategy;
};

// Two-bit guessing game over the four-state encoding {w0, w1, -w0, -w1}.
// Bob's first-bit guess uses the perfect measurement; the second-bit guess
// uses the tight effect along mu = (w0 + w1)/2.
GameReport nse_game(const Theory& theory);

struct ThreeStateDemo {
    TheorySpec spec;  // d=2, J={1,2}
    std::vector<PureRay> rays;
    std::vector<StateVector> states;
    Measurement measurement;  // E_i(w_k) = delta_ik, validated
    bool lp_certified = false;
    double fit_residual = 0;  // block-support least-squares residual
};

// Three perfectly distinguishable states in the d=2, J={1,2} theory, with
// effects supported on the j=2 block plus offset only.
ThreeStateDemo three_state_demo();

struct RestrictionBlock {
    int i = 0;
    int dim = 0;
    bool has_support = false;
    double mass = 0;  // largest orbit component seen in the block
};

struct RestrictionReport {
    std::vector<RestrictionBlock> blocks;  // zero-charge tower i = 0..j
    double max_offcharge = 0;  // largest component outside zero charge
};

// Projects the orbit of rays supported on span{|1>, |2>} onto the
// zero-charge blocks of the U(1) x SU(d-1) stabilizer subgroup.
RestrictionReport restriction_support(int d, int j, int samples = 60,
                                      std::uint64_t seed = 11);

}  // namespace gptlab
