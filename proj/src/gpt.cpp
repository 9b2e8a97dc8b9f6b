#include "gptlab/gpt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gptlab {

std::string TheorySpec::str() const {
    std::ostringstream os;
    os << "d=" << d << " J={";
    for (size_t i = 0; i < J.size(); ++i) os << (i ? "," : "") << J[i];
    os << "}";
    if (restriction == Restriction::PureStateDual) os << " restriction=pure-state-dual";
    return os.str();
}

bool TheorySpec::has_odd() const {
    return std::any_of(J.begin(), J.end(), [](int j) { return j % 2 == 1; });
}

PureRay PureRay::from(VectorXcd v) {
    double n = v.norm();
    if (n < 1e-12) throw std::invalid_argument("PureRay: zero vector");
    v /= n;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            v *= std::conj(v(i)) / std::abs(v(i));
            break;
        }
    }
    return PureRay{std::move(v)};
}

PureRay PureRay::basis(int d, int k) {
    return PureRay{VectorXcd::Unit(d, k)};
}

PureRay PureRay::orthogonal() const {
    if (amplitudes.size() != 2)
        throw std::invalid_argument("PureRay::orthogonal: defined for d=2 only");
    VectorXcd v(2);
    v(0) = -std::conj(amplitudes(1));
    v(1) = std::conj(amplitudes(0));
    return from(std::move(v));
}

double PureRay::overlap(const PureRay& other) const {
    return std::abs(amplitudes.dot(other.amplitudes));
}

void Ensemble::validate() const {
    double sum = 0;
    for (const auto& [p, psi] : entries) {
        if (p < 0) throw std::invalid_argument("Ensemble: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("Ensemble: probabilities must sum to 1");
}

Theory Theory::build(TheorySpec spec, int size_cap) {
    std::sort(spec.J.begin(), spec.J.end());
    Theory t;
    t.rep = direct_sum(spec.d, spec.J, size_cap);  // rejects empty/repeated J
    t.spec = std::move(spec);
    t.reference.kind = StateVector::Kind::pure;
    t.reference.coords.resize(t.rep.dim);
    for (size_t b = 0; b < t.rep.blocks.size(); ++b)
        t.reference.coords.segment(t.rep.offsets[b], t.rep.blocks[b].dim) =
            t.rep.blocks[b].ref;
    return t;
}

StateVector Theory::omega_unitary(const MatrixXcd& U) const {
    return StateVector{rep.group_element(U) * reference.coords,
                       StateVector::Kind::pure};
}

StateVector Theory::omega(const PureRay& psi) const {
    return omega_unitary(complete_to_su(psi.amplitudes));
}

std::vector<StateVector> Theory::orbit_sample(int Ns, int Nt) const {
    if (spec.d != 2)
        throw std::invalid_argument("orbit_sample: two-angle grid is d=2 only");
    const MatrixXcd X = su_basis(2)[0] * std::sqrt(2.0);
    const MatrixXcd Z = su_basis(2)[2] * std::sqrt(2.0);
    std::vector<StateVector> out;
    out.reserve(static_cast<size_t>(Ns) * Nt);
    for (int is = 0; is < Ns; ++is) {
        const double s = 2.0 * M_PI * is / Ns;
        const MatrixXd GZ = rep.group_element(exp_antihermitian(0.5 * s * Z));
        for (int it = 0; it < Nt; ++it) {
            const double t = M_PI * it / std::max(1, Nt - 1);
            const MatrixXd GX = rep.group_element(exp_antihermitian(0.5 * t * X));
            out.push_back({GZ * (GX * reference.coords), StateVector::Kind::pure});
        }
    }
    return out;
}

std::vector<StateVector> Theory::orbit_sample_haar(int samples,
                                                   std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<StateVector> out;
    out.reserve(samples);
    for (int i = 0; i < samples; ++i)
        out.push_back(omega_unitary(haar_su(spec.d, rng)));
    return out;
}

StateVector Theory::mix(const Ensemble& ensemble) const {
    ensemble.validate();
    VectorXd x = VectorXd::Zero(rep.dim);
    for (const auto& [p, psi] : ensemble.entries) x += p * omega(psi).coords;
    return {std::move(x), ensemble.entries.size() == 1 ? StateVector::Kind::pure
                                                       : StateVector::Kind::mixed};
}

FaithfulnessReport faithfulness_check(const Theory& theory, int samples,
                                      std::uint64_t seed) {
    FaithfulnessReport rep;
    if (theory.spec.d == 2) {
        rep.faithful = theory.spec.has_odd();
        if (!rep.faithful) {
            PureRay a = PureRay::basis(2, 0), b = PureRay::basis(2, 1);
            double gap = (theory.omega(a).coords - theory.omega(b).coords).norm();
            if (gap < 1e-9) {
                rep.has_witness = true;
                rep.witness_a = a;
                rep.witness_b = b;
            } else {
                throw std::runtime_error(
                    "faithfulness_check: even-only J did not collide orthogonal rays");
            }
        }
        return rep;
    }
    // d >= 3: injectivity spot check on Haar ray pairs.
    std::mt19937_64 rng(seed);
    std::vector<PureRay> rays;
    std::vector<VectorXd> omegas;
    for (int i = 0; i < samples; ++i) {
        MatrixXcd U = haar_su(theory.spec.d, rng);
        rays.push_back(PureRay::from(U.col(0)));
        omegas.push_back(theory.omega_unitary(U).coords);
    }
    double min_dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < omegas.size(); ++i) {
        for (size_t k = i + 1; k < omegas.size(); ++k) {
            // Skip rays that are themselves (numerically) identical.
            if (1.0 - rays[i].overlap(rays[k]) < 1e-12) continue;
            min_dist = std::min(min_dist, (omegas[i] - omegas[k]).norm());
        }
    }
    rep.min_pair_distance = min_dist;
    rep.faithful = min_dist > 1e-9;
    return rep;
}

bool antipodal_check(const Theory& theory, const PureRay& psi, const PureRay& phi,
                     double tol) {
    return (theory.omega(phi).coords + theory.omega(psi).coords).norm() < tol;
}

}  // namespace gptlab
