#include "gptlab/phenomenology.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gptlab {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// The single odd block every T_2^I construction starts from.
const IrrepBlock& single_odd_block(const Theory& theory) {
    if (theory.spec.d != 2 || theory.spec.J.size() != 1 ||
        theory.spec.J[0] % 2 == 0)
        throw std::invalid_argument(
            "expected a d=2 theory with a single odd block, got " +
            theory.spec.str());
    return theory.rep.blocks[0];
}

// Ray reached by the (s, t) orbit angles: e^{Zs/2} e^{Xt/2} |0>.
PureRay orbit_ray(double s, double t) {
    const MatrixXcd X = su_basis(2)[0] * std::sqrt(2.0);
    const MatrixXcd Z = su_basis(2)[2] * std::sqrt(2.0);
    VectorXcd psi0 = VectorXcd::Unit(2, 0);
    return PureRay::from(exp_antihermitian(0.5 * s * Z) *
                         (exp_antihermitian(0.5 * t * X) * psi0));
}

StateVector negate(const StateVector& w) {
    return StateVector{-w.coords, w.kind};
}

}  // namespace

XNullVector x_null_vector(int j) {
    if (j < 1 || j % 2 == 0)
        throw std::invalid_argument("x_null_vector: j must be odd and >= 1");
    auto [DX, DZ] = spin_generators(j);
    MatrixXcd ker = null_space(DX, 1e-9);
    if (ker.cols() != 1)
        throw std::runtime_error("x_null_vector: kernel dimension " +
                                 std::to_string(ker.cols()));
    VectorXcd v = ker.col(0);
    // Rotate the global phase so the top entry (weight +j) is real positive.
    cxd top = v(0);
    if (std::abs(top) < 1e-12)
        throw std::runtime_error("x_null_vector: vanishing leading entry");
    v *= std::conj(top) / std::abs(top);
    if (max_imag(v) > 1e-10)
        throw std::runtime_error("x_null_vector: kernel vector is not real");
    if ((DX * v).norm() > 1e-10)
        throw std::runtime_error("x_null_vector: residual kernel defect");

    XNullVector out;
    out.j = j;
    out.vec = v;
    out.a.resize((j + 1) / 2);
    for (int l = 1; l <= j; l += 2) {
        const double al = v(j - l).real();   // weight +l entry
        const double neg = v(j + l).real();  // weight -l entry
        if (std::abs(al + neg) > 1e-10)
            throw std::runtime_error("x_null_vector: antisymmetry violated");
        out.a[(l - 1) / 2] = al;
    }
    // Entries at even weights must vanish.
    for (int m = -j; m <= j; m += 2)
        if (m % 2 == 0 && std::abs(v(j - m)) > 1e-10)
            throw std::runtime_error("x_null_vector: unexpected even-weight entry");
    return out;
}

namespace {

double g_series(const XNullVector& xv, double t) {
    double g = 0;
    for (int l = 1; l <= xv.j; l += 2)
        g += 2.0 * l * xv.a_l(l) * xv.a_l(l) * std::sin(l * t);
    return g;
}

double g_series_d1(const XNullVector& xv, double t) {
    double g = 0;
    for (int l = 1; l <= xv.j; l += 2)
        g += 2.0 * l * l * xv.a_l(l) * xv.a_l(l) * std::cos(l * t);
    return g;
}

double g_series_d2(const XNullVector& xv, double t) {
    double g = 0;
    for (int l = 1; l <= xv.j; l += 2)
        g -= 2.0 * l * l * l * xv.a_l(l) * xv.a_l(l) * std::sin(l * t);
    return g;
}

}  // namespace

double g_of_t(int j, double t) {
    XNullVector xv = x_null_vector(j);
    auto [DX, DZ] = spin_generators(j);
    // Matrix form: (w_k^X)^dag D(Z)^dag D(U_Z(t)) w_k^X with
    // D(U_Z(t)) = e^{D(Z) t}.
    VectorXcd rotated = exponentiate(DZ, t) * xv.vec;
    cxd gm = (DZ * xv.vec).dot(rotated);  // dot conjugates the first factor
    if (std::abs(gm.imag()) > 1e-10)
        throw std::runtime_error("g_of_t: matrix form is not real");
    const double gs = g_series(xv, t);
    if (std::abs(gm.real() - gs) > 1e-9) {
        std::ostringstream os;
        os << "g_of_t: matrix form " << gm.real() << " and series " << gs
           << " disagree at t=" << t << " (j=" << j << ")";
        throw std::runtime_error(os.str());
    }
    return gs;
}

std::vector<GExtremum> find_g_extrema(int j) {
    const XNullVector xv = x_null_vector(j);
    const int N = 1 << 17;  // 131072 grid points
    std::vector<double> vals(N);
    for (int i = 0; i < N; ++i) vals[i] = g_series(xv, kTwoPi * i / N);

    std::vector<GExtremum> candidates;
    auto refine = [&](double t0, bool is_max) {
        double t = t0;
        for (int it = 0; it < 60; ++it) {
            const double d1 = g_series_d1(xv, t), d2 = g_series_d2(xv, t);
            if (std::abs(d2) < 1e-13) break;
            double step = -d1 / d2;
            step = std::clamp(step, -10.0 * kTwoPi / N, 10.0 * kTwoPi / N);
            t += step;
            if (std::abs(step) < 1e-15) break;
        }
        t = std::fmod(t, kTwoPi);
        if (t < 0) t += kTwoPi;
        for (const auto& c : candidates)
            if (std::abs(c.t - t) < 1e-8 ||
                std::abs(std::abs(c.t - t) - kTwoPi) < 1e-8)
                return;
        candidates.push_back({t, g_series(xv, t), is_max});
    };

    for (int i = 0; i < N; ++i) {
        const double prev = vals[(i + N - 1) % N], next = vals[(i + 1) % N];
        if (vals[i] > prev && vals[i] > next) refine(kTwoPi * i / N, true);
        if (vals[i] < prev && vals[i] < next) refine(kTwoPi * i / N, false);
    }

    double best_max = -1e300, best_min = 1e300;
    for (const auto& c : candidates) {
        best_max = std::max(best_max, c.value);
        best_min = std::min(best_min, c.value);
    }
    std::vector<GExtremum> out;
    for (const auto& c : candidates) {
        if (c.is_max && c.value > best_max - 1e-9 * (1 + std::abs(best_max)))
            out.push_back(c);
        if (!c.is_max && c.value < best_min + 1e-9 * (1 + std::abs(best_min)))
            out.push_back(c);
    }
    std::sort(out.begin(), out.end(),
              [](const GExtremum& a, const GExtremum& b) { return a.t < b.t; });
    return out;
}

NonantipodalPair nonantipodal_pair(const Theory& theory) {
    const IrrepBlock& blk = single_odd_block(theory);
    if (theory.spec.restriction != Restriction::Unrestricted)
        throw std::invalid_argument("nonantipodal_pair: unrestricted effects only");
    const int j = blk.j;

    // The X-tangent effect at the reference state, then tight-normalized
    // against its orbit extrema.
    Effect raw{theory.rep.generator(0) * theory.reference.coords, 0.0};
    OrbitExtrema ext = effect_extrema_over_orbit(theory, raw);
    const double M = ext.max_value, m = ext.min_value;
    if (M - m < 1e-9)
        throw std::runtime_error("nonantipodal_pair: degenerate effect");
    Effect E{raw.e / (M - m), -m / (M - m)};

    // Pick the argmax/argmin combination with the largest ||p + q||: for
    // j >= 3 this pairs a maximum with the reflection of the *other*
    // maximum, which is not its antipode.
    if (ext.argmax.empty() || ext.argmin.empty())
        throw std::runtime_error("nonantipodal_pair: no extremizers");
    size_t ia = 0, ib = 0;
    double best_gap = -1;
    for (size_t p = 0; p < ext.argmax_states.size(); ++p) {
        for (size_t q = 0; q < ext.argmin_states.size(); ++q) {
            const double gap =
                (ext.argmax_states[p] + ext.argmin_states[q]).norm();
            if (gap > best_gap) {
                best_gap = gap;
                ia = p;
                ib = q;
            }
        }
    }

    NonantipodalPair out;
    out.omega_a = {ext.argmax_states[ia], StateVector::Kind::pure};
    out.omega_b = {ext.argmin_states[ib], StateVector::Kind::pure};
    out.psi_a = orbit_ray(ext.argmax[ia].first, ext.argmax[ia].second);
    out.psi_b = orbit_ray(ext.argmin[ib].first, ext.argmin[ib].second);
    out.overlap = out.psi_a.overlap(out.psi_b);
    out.antipodal_gap = best_gap;
    out.measurement.effects = {E, Effect{-E.e, 1.0 - E.c}};

    const double ea = evaluate(E, out.omega_a), eb = evaluate(E, out.omega_b);
    if (std::abs(ea - 1.0) > 1e-7 || std::abs(eb) > 1e-7)
        throw std::runtime_error("nonantipodal_pair: imperfect separation");
    // Consistency between the ray bookkeeping and the states.
    if ((theory.omega(out.psi_a).coords - out.omega_a.coords).norm() > 1e-6 ||
        (theory.omega(out.psi_b).coords - out.omega_b.coords).norm() > 1e-6)
        throw std::runtime_error("nonantipodal_pair: ray/state mismatch");
    ValidationReport vr = validate_measurement(theory, out.measurement);
    if (!vr.valid)
        throw std::runtime_error("nonantipodal_pair: invalid measurement: " +
                                 vr.violations.front());
    if (j >= 3) {
        if (out.antipodal_gap < 1e-3)
            throw std::runtime_error("nonantipodal_pair: pair is antipodal");
        if (out.overlap < 1e-6)
            throw std::runtime_error("nonantipodal_pair: rays are orthogonal");
    }
    return out;
}

namespace {

// Tight antipodal measurement supported on one odd block: E = (e.w + 1)/2
// with e the block's reference direction.
std::pair<Measurement, CertifiedPair> antipodal_witness(const Theory& theory) {
    int bo = -1;
    for (size_t b = 0; b < theory.rep.blocks.size(); ++b)
        if (theory.rep.blocks[b].j % 2 == 1) {
            bo = static_cast<int>(b);
            break;
        }
    if (bo < 0)
        throw std::invalid_argument("antipodal witness needs an odd block");
    VectorXd e = VectorXd::Zero(theory.rep.dim);
    e.segment(theory.rep.offsets[bo], theory.rep.blocks[bo].dim) =
        0.5 * theory.rep.blocks[bo].ref;
    Measurement m;
    m.effects = {Effect{e, 0.5}, Effect{-e, 0.5}};
    CertifiedPair pair;
    pair.psi_a = PureRay::basis(2, 0);
    pair.psi_b = PureRay::basis(2, 1);
    pair.overlap = pair.psi_a.overlap(pair.psi_b);
    pair.origin = "antipodal pair, odd-block reference effect";
    const double p0 = evaluate(m.effects[0], theory.omega(pair.psi_a));
    const double p1 = evaluate(m.effects[0], theory.omega(pair.psi_b));
    if (std::abs(p0 - 1.0) > 1e-9 || std::abs(p1) > 1e-9)
        throw std::runtime_error("antipodal witness: separation failed");
    ValidationReport vr = validate_measurement(theory, m);
    if (!vr.valid)
        throw std::runtime_error("antipodal witness: invalid measurement");
    return {m, pair};
}

PureRay random_ray(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0, 1);
    VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = cxd(g(rng), g(rng));
    return PureRay::from(v);
}

void lp_certify_pair(const Theory& theory, BitSymmetryReport& report,
                     const PureRay& a, const PureRay& b,
                     const std::string& origin) {
    auto lp = distinguishability_lp(theory, {theory.omega(a), theory.omega(b)});
    if (!lp.feasible)
        throw std::runtime_error("bit_symmetry_test: expected-feasible pair " +
                                 origin + " was not certified: " + lp.note);
    report.pairs.push_back({a, b, a.overlap(b), origin + " (LP certified)"});
}

void conclude(BitSymmetryReport& report) {
    for (size_t p = 0; p < report.pairs.size(); ++p) {
        for (size_t q = p + 1; q < report.pairs.size(); ++q) {
            if (std::abs(report.pairs[p].overlap - report.pairs[q].overlap) >
                1e-6) {
                report.bit_symmetric = false;
                report.witness_a = static_cast<int>(p);
                report.witness_b = static_cast<int>(q);
                return;
            }
        }
    }
}

}  // namespace

BitSymmetryReport bit_symmetry_test(const Theory& theory, int samples,
                                    std::uint64_t seed) {
    BitSymmetryReport report;
    const TheorySpec& spec = theory.spec;
    std::mt19937_64 rng(seed);

    if (spec.d == 2 && spec.restriction == Restriction::PureStateDual) {
        // Dual effects have a unique maximum, so only antipodal pairs are
        // distinguishable.
        CertifiedPair pair;
        pair.psi_a = PureRay::basis(2, 0);
        pair.psi_b = PureRay::basis(2, 1);
        pair.overlap = 0;
        pair.origin = "antipodal pair, dual effect";
        Effect dual = pure_state_dual_effect(theory, pair.psi_a);
        if (std::abs(evaluate(dual, theory.omega(pair.psi_a)) - 1.0) > 1e-9 ||
            std::abs(evaluate(dual, theory.omega(pair.psi_b))) > 1e-9)
            throw std::runtime_error("bit_symmetry_test: dual pair failed");
        report.pairs.push_back(pair);
        // No dual effect perfectly separates a nonantipodal sample pair.
        for (int trial = 0; trial < 8; ++trial) {
            PureRay a = random_ray(2, rng), b = random_ray(2, rng);
            VectorXd wa = theory.omega(a).coords, wb = theory.omega(b).coords;
            if ((wa + wb).norm() < 1e-3) continue;
            // E(wa) - E(wb) = Omega_psi . (wa - wb) / 2 < 1 for every psi.
            Effect diff{0.5 * (wa - wb), 0.0};
            OrbitExtrema ext = effect_extrema_over_orbit(theory, diff);
            if (ext.max_value > 1.0 - 1e-6)
                throw std::runtime_error(
                    "bit_symmetry_test: dual theory separated a nonantipodal pair");
        }
        return report;
    }

    if (spec.d == 2) {
        if (!spec.has_odd())
            throw std::invalid_argument("bit_symmetry_test: theory not faithful");
        auto [m, pair] = antipodal_witness(theory);
        report.pairs.push_back(pair);

        int odd_big = 0;
        for (int j : spec.J)
            if (j % 2 == 1 && j > 1) odd_big = j;

        if (odd_big > 0) {
            Theory sub = Theory::build({2, {odd_big}, Restriction::Unrestricted});
            NonantipodalPair nap = nonantipodal_pair(sub);
            if (spec.J.size() == 1) {
                report.pairs.push_back({nap.psi_a, nap.psi_b, nap.overlap,
                                        "nonantipodal pair, tangent effect"});
            } else {
                lp_certify_pair(theory, report, nap.psi_a, nap.psi_b,
                                "nonantipodal pair from block j=" +
                                    std::to_string(odd_big));
            }
        } else if (spec.J.size() > 1) {
            // Unfaithful even blocks distinguish rays that are not
            // orthogonal, e.g. |0> vs |+>.
            PureRay plus = PureRay::from((VectorXcd(2) << 1, 1).finished());
            lp_certify_pair(theory, report, PureRay::basis(2, 0), plus,
                            "non-orthogonal pair via even block");
        } else {
            // J = {1}: sample pairs; the certified ones are exactly the
            // antipodal ones.
            int certified = 0;
            int checked_nonantipodal = 0;
            for (int trial = 0; trial < samples; ++trial) {
                PureRay a = random_ray(2, rng);
                PureRay b = (trial % 2 == 0) ? a.orthogonal() : random_ray(2, rng);
                VectorXd wa = theory.omega(a).coords,
                         wb = theory.omega(b).coords;
                if ((wa + wb).norm() < 1e-6) {
                    report.pairs.push_back(
                        {a, b, a.overlap(b), "antipodal sample pair"});
                    ++certified;
                } else if (checked_nonantipodal < 10) {
                    // The natural tight candidate cannot separate them.
                    Effect diff{wa - wb, 0.0};
                    OrbitExtrema ext = effect_extrema_over_orbit(theory, diff);
                    const double sep = (diff.e.dot(wa) - diff.e.dot(wb)) /
                                       (ext.max_value - ext.min_value);
                    if (sep > 1.0 - 1e-3)
                        throw std::runtime_error(
                            "bit_symmetry_test: separated a nonantipodal pair");
                    ++checked_nonantipodal;
                }
            }
            if (certified == 0)
                throw std::runtime_error("bit_symmetry_test: no certified pairs");
        }
        conclude(report);
        return report;
    }

    // d >= 3: orthogonal rays inside the restricted subspace span{|1>,|2>},
    // and a pair at 45 degrees in the same subspace.
    PureRay e1 = PureRay::basis(spec.d, 1);
    PureRay e2 = PureRay::basis(spec.d, 2);
    VectorXcd mixv = VectorXcd::Zero(spec.d);
    mixv(1) = 1;
    mixv(2) = 1;
    lp_certify_pair(theory, report, e1, e2, "orthogonal subspace pair");
    lp_certify_pair(theory, report, e1, PureRay::from(mixv),
                    "45-degree subspace pair");
    conclude(report);
    return report;
}

PhaseGroupReport phase_group(const Theory& theory, const Measurement& m,
                             const PureRay* ray_a, const PureRay* ray_b) {
    if (theory.spec.d != 2)
        throw std::invalid_argument("phase_group: d=2 only");
    PhaseGroupReport out;

    // Lie part: K in su(2) with e_i . D(K) = 0 for every effect.
    const int dim = theory.rep.dim;
    MatrixXd W(static_cast<int>(m.effects.size()) * dim, 3);
    for (int a = 0; a < 3; ++a) {
        const MatrixXd G = theory.rep.generator(a);
        for (size_t i = 0; i < m.effects.size(); ++i)
            W.block(static_cast<int>(i) * dim, a, dim, 1) =
                G.transpose() * m.effects[i].e;
    }
    Eigen::JacobiSVD<MatrixXd> svd(W);
    const VectorXd sv = svd.singularValues();
    int rank = 0;
    const double tol = 1e-7 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    out.lie_dimension = 3 - rank;

    if (!ray_a || !ray_b) return out;

    // Discrete candidate class: involutions V with V psi_a ~ psi_a_perp and
    // V psi_b ~ psi_b_perp. With psi_b = alpha psi_a + beta psi_a_perp the
    // one-parameter family V(theta) admits at most one solution in PU(2).
    const VectorXcd pa = ray_a->amplitudes;
    const VectorXcd pap = ray_a->orthogonal().amplitudes;
    const cxd alpha = pa.dot(ray_b->amplitudes);
    const cxd beta = pap.dot(ray_b->amplitudes);

    auto test_theta = [&](double theta) {
        const cxd ph(std::cos(theta), std::sin(theta));
        MatrixXcd V = ph * pap * pa.adjoint() -
                      std::conj(ph) * pa * pap.adjoint();
        // Must actually flip ray_b.
        const cxd diag = (V * ray_b->amplitudes).dot(ray_b->amplitudes);
        if (std::abs(diag) > 1e-7) return false;
        const MatrixXd G = theory.rep.group_element(V);
        if ((G - MatrixXd::Identity(dim, dim)).norm() < 1e-6) return false;
        for (const Effect& eff : m.effects)
            if ((G.transpose() * eff.e - eff.e).norm() >
                1e-7 * (1 + eff.e.norm()))
                return false;
        return true;
    };

    if (std::abs(alpha) * std::abs(beta) > 1e-12) {
        const double theta = -std::arg(alpha * std::conj(beta));
        out.discrete_swap = test_theta(theta);
    } else {
        // ray_b is psi_a or its perpendicular: the whole family qualifies
        // geometrically, so scan it.
        for (int k = 0; k < 16 && !out.discrete_swap; ++k)
            out.discrete_swap = test_theta(kTwoPi * k / 16);
    }
    return out;
}

GameReport nse_game(const Theory& theory) {
    GameReport out;
    if (theory.spec.restriction == Restriction::PureStateDual) {
        // Only antipodal pairs are distinguishable, so the four-state
        // encoding collapses: w1 = -w0 and the midpoint carries nothing.
        single_odd_block(theory);
        PureRay psi0 = PureRay::basis(2, 0);
        Effect e = pure_state_dual_effect(theory, psi0);
        StateVector w0 = theory.omega(psi0);
        StateVector w1 = negate(w0);
        const double pa = 0.25 * (evaluate(e, w0) + evaluate(e, negate(w1)) +
                                  (1 - evaluate(e, w1)) +
                                  (1 - evaluate(e, negate(w0))));
        out.p_guess_a = pa;
        out.p_guess_a_prime = 0.5;
        out.strategy =
            "dual-effect antipodal encoding; midpoint is maximally mixed";
        return out;
    }

    NonantipodalPair pair = nonantipodal_pair(theory);
    const Effect& E = pair.measurement.effects[0];
    const StateVector& w0 = pair.omega_a;
    const StateVector& w1 = pair.omega_b;
    out.p_guess_a = 0.25 * (evaluate(E, w0) + evaluate(E, negate(w1)) +
                            (1 - evaluate(E, w1)) + (1 - evaluate(E, negate(w0))));

    VectorXd mu = 0.5 * (w0.coords + w1.coords);
    if (mu.norm() < 1e-9) {
        out.p_guess_a_prime = 0.5;
        out.strategy = "antipodal encoding; midpoint is maximally mixed";
        return out;
    }
    // Tight effect along the midpoint direction; the guessing probability is
    // 1/2 + e' . mu.
    Effect raw{mu, 0.0};
    OrbitExtrema ext = effect_extrema_over_orbit(theory, raw);
    Effect Ep{raw.e / (ext.max_value - ext.min_value),
              -ext.min_value / (ext.max_value - ext.min_value)};
    out.p_guess_a_prime = 0.5 + Ep.e.dot(mu);
    out.strategy = "tight midpoint effect along (w0 + w1)/2";
    if (out.p_guess_a_prime < 0.5 - 1e-9 || out.p_guess_a_prime > 1 + 1e-9)
        throw std::runtime_error("nse_game: out-of-range guessing probability");
    return out;
}

ThreeStateDemo three_state_demo() {
    ThreeStateDemo out;
    out.spec = TheorySpec{2, {1, 2}, Restriction::Unrestricted};
    Theory theory = Theory::build(out.spec);

    // Three rays whose Bloch vectors are the coordinate axes.
    out.rays = {PureRay::basis(2, 0),
                PureRay::from((VectorXcd(2) << 1, 1).finished()),
                PureRay::from((VectorXcd(2) << 1, cxd(0, 1)).finished())};
    for (const PureRay& r : out.rays) out.states.push_back(theory.omega(r));

    int b2 = -1;
    for (size_t b = 0; b < theory.rep.blocks.size(); ++b)
        if (theory.rep.blocks[b].j == 2) b2 = static_cast<int>(b);
    const int off2 = theory.rep.offsets[b2];
    const int dim2 = theory.rep.blocks[b2].dim;

    // In the real-qutrit picture E_i(w(n)) = (n . n_i)^2 = 1/3 + (linear in
    // the j=2 block); fit that linear part on sampled rays and verify the
    // residual vanishes.
    const int K = 400;
    std::mt19937_64 rng(7);
    MatrixXd A(K, dim2);
    MatrixXd B(K, 3);
    for (int k = 0; k < K; ++k) {
        PureRay psi = random_ray(2, rng);
        const cxd a = psi.amplitudes(0), b = psi.amplitudes(1);
        const double nx = 2 * (std::conj(a) * b).real();
        const double ny = 2 * (std::conj(a) * b).imag();
        const double nz = std::norm(a) - std::norm(b);
        A.row(k) = theory.omega(psi).coords.segment(off2, dim2).transpose();
        B(k, 0) = nz * nz - 1.0 / 3.0;
        B(k, 1) = nx * nx - 1.0 / 3.0;
        B(k, 2) = ny * ny - 1.0 / 3.0;
    }
    Eigen::ColPivHouseholderQR<MatrixXd> qr(A);
    MatrixXd Q(dim2, 3);
    for (int i = 0; i < 3; ++i) {
        Q.col(i) = qr.solve(B.col(i));
        out.fit_residual =
            std::max(out.fit_residual, (A * Q.col(i) - B.col(i)).norm());
    }
    if (out.fit_residual > 1e-8)
        throw std::runtime_error(
            "three_state_demo: effects are not supported on the j=2 block");
    // Exact normalization: the three quadratics sum to 1.
    VectorXd qsum = Q.rowwise().sum() / 3.0;
    for (int i = 0; i < 3; ++i) Q.col(i) -= qsum;

    for (int i = 0; i < 3; ++i) {
        VectorXd e = VectorXd::Zero(theory.rep.dim);
        e.segment(off2, dim2) = Q.col(i);
        out.measurement.effects.push_back({e, 1.0 / 3.0});
    }
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            const double p = evaluate(out.measurement.effects[i], out.states[k]);
            if (std::abs(p - (i == k ? 1.0 : 0.0)) > 1e-9)
                throw std::runtime_error("three_state_demo: E_i(w_k) != delta");
        }
    ValidationReport vr = validate_measurement(theory, out.measurement);
    if (!vr.valid)
        throw std::runtime_error("three_state_demo: invalid measurement: " +
                                 vr.violations.front());
    out.lp_certified = distinguishability_lp(theory, out.states).feasible;
    return out;
}

RestrictionReport restriction_support(int d, int j, int samples,
                                      std::uint64_t seed) {
    if (d != 3)
        throw std::invalid_argument("restriction_support: implemented for d=3");
    Theory theory = Theory::build({d, {j}, Restriction::Unrestricted});
    const IrrepBlock& blk = theory.rep.blocks[0];

    // U(1) charge generator of the stabilizer of |0>.
    MatrixXcd T = MatrixXcd::Zero(d, d);
    T(0, 0) = cxd(0, d - 1);
    for (int i = 1; i < d; ++i) T(i, i) = cxd(0, -1);
    MatrixXd AT = blk.algebra_element(su_coefficients(T, theory.rep.su));
    MatrixXd K = null_space_real(AT, 1e-7);
    if (K.cols() != (j + 1) * (j + 1))
        throw std::runtime_error("restriction_support: zero-charge dimension " +
                                 std::to_string(K.cols()));

    // SU(d-1) Casimir restricted to the zero-charge subspace.
    const auto su2 = su_basis(d - 1);
    MatrixXd casimir = MatrixXd::Zero(K.cols(), K.cols());
    for (const MatrixXcd& k2 : su2) {
        MatrixXcd embedded = MatrixXcd::Zero(d, d);
        embedded.bottomRightCorner(d - 1, d - 1) = k2;
        MatrixXd P = K.transpose() *
                     blk.algebra_element(su_coefficients(embedded, theory.rep.su)) *
                     K;
        casimir -= P * P;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(casimir);
    auto clusters = cluster_eigenvalues(es.eigenvalues(), kClusterTol);

    RestrictionReport out;
    out.blocks.resize(j + 1);
    std::vector<MatrixXd> bases(j + 1);
    std::vector<bool> seen(j + 1, false);
    for (auto [b, e] : clusters) {
        const int dim = e - b;
        if (dim % 2 == 0 || (dim - 1) / 2 > j)
            throw std::runtime_error(
                "restriction_support: unexpected SU(2) block of dimension " +
                std::to_string(dim));
        const int i = (dim - 1) / 2;
        if (seen[i])
            throw std::runtime_error("restriction_support: repeated block i=" +
                                     std::to_string(i));
        seen[i] = true;
        out.blocks[i] = {i, dim, false, 0.0};
        bases[i] = K * es.eigenvectors().middleCols(b, dim);
    }
    for (int i = 0; i <= j; ++i)
        if (!seen[i])
            throw std::runtime_error("restriction_support: missing block i=" +
                                     std::to_string(i));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    for (int s = 0; s < samples; ++s) {
        VectorXcd v = VectorXcd::Zero(d);
        for (int i = 1; i < d; ++i) v(i) = cxd(g(rng), g(rng));
        VectorXd w = theory.omega(PureRay::from(v)).coords;
        out.max_offcharge =
            std::max(out.max_offcharge, (w - K * (K.transpose() * w)).norm());
        for (int i = 0; i <= j; ++i)
            out.blocks[i].mass = std::max(out.blocks[i].mass,
                                          (bases[i].transpose() * w).norm());
    }
    for (int i = 0; i <= j; ++i)
        out.blocks[i].has_support = out.blocks[i].mass > 1e-8;
    return out;
}

}  // namespace gptlab
