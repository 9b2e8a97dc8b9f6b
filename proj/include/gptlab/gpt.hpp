#pragma once

// State geometry of a theory (d, J): reference vector, the ray -> state map
// Omega, orbit sampling, mixing, and the faithfulness / antipodality checks.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gptlab/irreps.hpp"

namespace gptlab {

enum class Restriction { Unrestricted, PureStateDual };

struct TheorySpec {
    int d = 2;
    std::vector<int> J;  // stored sorted ascending, no repeats
    Restriction restriction = Restriction::Unrestricted;

    std::string str() const;
    bool has_odd() const;
};

// A ray in C^d: unit vector, global phase fixed so the first component of
// magnitude > 1e-12 is real and positive.
struct PureRay {
    VectorXcd amplitudes;

    static PureRay from(VectorXcd v);
    static PureRay basis(int d, int k);
    // The unique orthogonal ray for d=2.
    PureRay orthogonal() const;
    double overlap(const PureRay& other) const;  // |<psi|phi>|
};

struct StateVector {
    enum class Kind { pure, mixed };
    VectorXd coords;
    Kind kind = Kind::pure;
};

struct Ensemble {
    std::vector<std::pair<double, PureRay>> entries;
    void validate() const;  // probabilities >= 0, sum to 1 within 1e-12
};

class Theory {
  public:
    TheorySpec spec;
    RepRealization rep;
    StateVector reference;  // per-block unit reference vectors, concatenated

    static Theory build(TheorySpec spec, int size_cap = kDefaultSizeCap);

    StateVector omega(const PureRay& psi) const;
    StateVector omega_unitary(const MatrixXcd& U) const;  // Gamma_U . reference
    // d=2 grid: Gamma(U_Z(s)) Gamma(U_X(t)) ref, s in [0,2pi), t in [0,pi].
    std::vector<StateVector> orbit_sample(int Ns, int Nt) const;
    // d>=3: seeded Haar rays.
    std::vector<StateVector> orbit_sample_haar(int samples, std::uint64_t seed) const;
    StateVector mix(const Ensemble& ensemble) const;
};

struct FaithfulnessReport {
    bool faithful = false;
    bool has_witness = false;       // collision pair found (d=2 even-only J)
    PureRay witness_a, witness_b;
    double min_pair_distance = 0;   // d>=3 injectivity spot check
};

FaithfulnessReport faithfulness_check(const Theory& theory, int samples,
                                      std::uint64_t seed = 1234);

// True iff Omega_phi = -Omega_psi within tol. For faithful d=2 theories this
// must coincide with |<psi|phi>| < tol.
bool antipodal_check(const Theory& theory, const PureRay& psi, const PureRay& phi,
                     double tol = 1e-9);

}  // namespace gptlab
