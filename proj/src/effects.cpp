#include "gptlab/effects.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gptlab/simplex.hpp"

namespace gptlab {

double evaluate(const Effect& effect, const StateVector& state) {
    if (effect.e.size() != state.coords.size())
        throw std::invalid_argument("evaluate: dimension mismatch");
    return effect.e.dot(state.coords) + effect.c;
}

namespace {

// Halved real generators: Gamma(e^{Zs/2}) = exp(s Mz) etc.
MatrixXd halved_generator(const Theory& th, int a) {
    return 0.5 * std::sqrt(2.0) * th.rep.generator(a);
}

MatrixXd real_exp(const MatrixXd& S) {
    MatrixXcd E = exp_antihermitian(S.cast<cxd>());
    return E.real();
}

struct OrbitScan {
    const Theory* th;
    MatrixXd Mz, Mx;
    VectorXd omega0;

    explicit OrbitScan(const Theory& theory)
        : th(&theory),
          Mz(halved_generator(theory, 2)),
          Mx(halved_generator(theory, 0)),
          omega0(theory.reference.coords) {}

    VectorXd state(double s, double t) const {
        return real_exp(s * Mz) * (real_exp(t * Mx) * omega0);
    }

    // Value, gradient and Hessian of f(s,t) = e . w(s,t) + c.
    void derivatives(const Effect& eff, double s, double t, double& f,
                     Eigen::Vector2d& g, Eigen::Matrix2d& H) const {
        MatrixXd Gz = real_exp(s * Mz);
        VectorXd xt = real_exp(t * Mx) * omega0;
        VectorXd u = Gz.transpose() * eff.e;        // u^T = e^T Gz
        VectorXd uz = Gz.transpose() * (Mz.transpose() * eff.e);
        f = u.dot(xt) + eff.c;
        g(0) = uz.dot(xt);
        g(1) = u.dot(Mx * xt);
        H(0, 0) = (Gz.transpose() * (Mz.transpose() * (Mz.transpose() * eff.e))).dot(xt);
        H(0, 1) = uz.dot(Mx * xt);
        H(1, 0) = H(0, 1);
        H(1, 1) = u.dot(Mx * (Mx * xt));
    }

    // Newton from a grid seed toward the nearby critical point.
    std::pair<double, double> refine(const Effect& eff, double s, double t) const {
        for (int it = 0; it < 60; ++it) {
            double f;
            Eigen::Vector2d g;
            Eigen::Matrix2d H;
            derivatives(eff, s, t, f, g, H);
            if (g.norm() < 1e-11) break;
            Eigen::Vector2d step =
                H.completeOrthogonalDecomposition().solve(-g);
            if (!step.allFinite()) break;
            double cap = 0.2;  // stay near the seeding grid cell
            if (step.norm() > cap) step *= cap / step.norm();
            s += step(0);
            t += step(1);
        }
        return {s, t};
    }
};

void push_unique(std::vector<std::pair<double, double>>& args,
                 std::vector<VectorXd>& states, std::pair<double, double> st,
                 const VectorXd& w) {
    for (const VectorXd& v : states)
        if ((v - w).norm() < 1e-6) return;
    args.push_back(st);
    states.push_back(w);
}

}  // namespace

OrbitExtrema effect_extrema_over_orbit(const Theory& theory, const Effect& effect,
                                       int grid) {
    if (theory.spec.d != 2)
        throw std::invalid_argument("effect_extrema_over_orbit: d=2 only");
    OrbitScan scan(theory);
    const int Ns = grid, Nt = grid;
    MatrixXd f(Ns, Nt);
    std::vector<MatrixXd> Gz(Ns);
    std::vector<VectorXd> xt(Nt);
    for (int i = 0; i < Ns; ++i) Gz[i] = real_exp(2.0 * M_PI * i / Ns * scan.Mz);
    for (int k = 0; k < Nt; ++k)
        xt[k] = real_exp(M_PI * k / (Nt - 1) * scan.Mx) * scan.omega0;
    for (int i = 0; i < Ns; ++i) {
        VectorXd u = Gz[i].transpose() * effect.e;
        for (int k = 0; k < Nt; ++k) f(i, k) = u.dot(xt[k]) + effect.c;
    }

    OrbitExtrema out;
    out.min_value = f.minCoeff();
    out.max_value = f.maxCoeff();
    if (out.max_value - out.min_value < 1e-12) {
        // Constant effect over the orbit.
        out.argmin = out.argmax = {{0.0, 0.0}};
        out.argmin_states = out.argmax_states = {scan.omega0};
        out.min_value = out.max_value = f(0, 0);
        return out;
    }

    auto sweep = [&](bool want_max) {
        double sign = want_max ? 1.0 : -1.0;
        double best = -std::numeric_limits<double>::infinity();
        std::vector<std::pair<double, double>> args;
        std::vector<VectorXd> states;
        std::vector<std::pair<double, std::pair<double, double>>> refined;
        for (int i = 0; i < Ns; ++i) {
            for (int k = 0; k < Nt; ++k) {
                bool local = true;
                for (int di = -1; di <= 1 && local; ++di) {
                    for (int dk = -1; dk <= 1; ++dk) {
                        if (!di && !dk) continue;
                        int kk = k + dk;
                        if (kk < 0 || kk >= Nt) continue;
                        int ii = (i + di + Ns) % Ns;
                        if (sign * f(ii, kk) > sign * f(i, k)) {
                            local = false;
                            break;
                        }
                    }
                }
                if (!local) continue;
                auto [s, t] = scan.refine(effect,
                                          2.0 * M_PI * i / Ns,
                                          M_PI * k / (Nt - 1));
                double fv;
                Eigen::Vector2d g;
                Eigen::Matrix2d H;
                scan.derivatives(effect, s, t, fv, g, H);
                refined.push_back({sign * fv, {s, t}});
                best = std::max(best, sign * fv);
            }
        }
        for (const auto& [v, st] : refined) {
            if (best - v < 1e-7)
                push_unique(args, states, st, scan.state(st.first, st.second));
        }
        if (want_max) {
            out.max_value = sign * best;
            out.argmax = std::move(args);
            out.argmax_states = std::move(states);
        } else {
            out.min_value = sign * best;
            out.argmin = std::move(args);
            out.argmin_states = std::move(states);
        }
    };
    sweep(true);
    sweep(false);
    return out;
}

std::vector<StateVector> default_witness(const Theory& theory, std::uint64_t seed) {
    if (theory.spec.d == 2) return theory.orbit_sample(64, 64);
    return theory.orbit_sample_haar(2000, seed);
}

namespace {

// Worst effect values over the certification set; appends offending states.
struct EffectRange {
    double min = 0, max = 0;
    std::vector<VectorXd> violators;  // states past [0,1] by > tol
};

EffectRange certify_effect(const Theory& th, const Effect& eff,
                           const std::vector<StateVector>& haar_witness,
                           double tol) {
    EffectRange r;
    if (th.spec.d == 2) {
        OrbitExtrema ex = effect_extrema_over_orbit(th, eff);
        r.min = ex.min_value;
        r.max = ex.max_value;
        if (ex.min_value < -tol)
            for (const auto& w : ex.argmin_states) r.violators.push_back(w);
        if (ex.max_value > 1 + tol)
            for (const auto& w : ex.argmax_states) r.violators.push_back(w);
        return r;
    }
    r.min = std::numeric_limits<double>::infinity();
    r.max = -r.min;
    int worst_lo = -1, worst_hi = -1;
    for (size_t i = 0; i < haar_witness.size(); ++i) {
        double v = evaluate(eff, haar_witness[i]);
        if (v < r.min) r.min = v, worst_lo = static_cast<int>(i);
        if (v > r.max) r.max = v, worst_hi = static_cast<int>(i);
    }
    if (r.min < -tol) r.violators.push_back(haar_witness[worst_lo].coords);
    if (r.max > 1 + tol) r.violators.push_back(haar_witness[worst_hi].coords);
    return r;
}

}  // namespace

ValidationReport validate_measurement(const Theory& theory, const Measurement& m) {
    ValidationReport rep;
    rep.valid = true;
    const int n = theory.rep.dim;
    VectorXd esum = VectorXd::Zero(n);
    double csum = 0;
    for (const Effect& eff : m.effects) {
        if (eff.e.size() != n) {
            rep.valid = false;
            rep.violations.push_back("effect dimension mismatch");
            return rep;
        }
        esum += eff.e;
        csum += eff.c;
    }
    if (esum.cwiseAbs().maxCoeff() > 1e-10) {
        rep.valid = false;
        rep.violations.push_back("sum of effect vectors is nonzero");
    }
    if (std::abs(csum - 1.0) > 1e-10) {
        rep.valid = false;
        rep.violations.push_back("effect offsets do not sum to 1");
    }
    std::vector<StateVector> wit =
        theory.spec.d >= 3 ? default_witness(theory) : std::vector<StateVector>{};
    rep.min_value = std::numeric_limits<double>::infinity();
    rep.max_value = -rep.min_value;
    for (size_t i = 0; i < m.effects.size(); ++i) {
        EffectRange r = certify_effect(theory, m.effects[i], wit, 1e-7);
        rep.min_value = std::min(rep.min_value, r.min);
        rep.max_value = std::max(rep.max_value, r.max);
        if (r.min < -1e-7 || r.max > 1 + 1e-7) {
            rep.valid = false;
            std::ostringstream os;
            os << "effect " << i << " range [" << r.min << ", " << r.max
               << "] escapes [0,1]";
            rep.violations.push_back(os.str());
        }
    }
    return rep;
}

namespace {

LpProblem build_distinguish_lp(const Theory& th,
                               const std::vector<StateVector>& states,
                               const std::vector<VectorXd>& witness) {
    const int n = th.rep.dim;
    const int m = static_cast<int>(states.size());
    const int nv = m * (n + 1);  // per effect: e (n) then c (1)
    auto eidx = [n](int i) { return i * (n + 1); };

    LpProblem lp;
    lp.nvars = nv;
    const int me = n + 1 + m * m;
    lp.Aeq = MatrixXd::Zero(me, nv);
    lp.beq = VectorXd::Zero(me);
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < n; ++k) lp.Aeq(k, eidx(i) + k) = 1.0;  // sum e = 0
        lp.Aeq(n, eidx(i) + n) = 1.0;                              // sum c = 1
    }
    lp.beq(n) = 1.0;
    int row = n + 1;
    for (int i = 0; i < m; ++i) {
        for (int s = 0; s < m; ++s) {
            lp.Aeq.block(row, eidx(i), 1, n) = states[s].coords.transpose();
            lp.Aeq(row, eidx(i) + n) = 1.0;
            lp.beq(row) = (i == s) ? 1.0 : 0.0;
            ++row;
        }
    }

    const int mw = static_cast<int>(witness.size());
    lp.Aub = MatrixXd::Zero(2 * m * mw, nv);
    lp.bub = VectorXd::Zero(2 * m * mw);
    row = 0;
    for (int i = 0; i < m; ++i) {
        for (int w = 0; w < mw; ++w) {
            lp.Aub.block(row, eidx(i), 1, n) = witness[w].transpose();
            lp.Aub(row, eidx(i) + n) = 1.0;
            lp.bub(row) = 1.0;  // E_i(w) <= 1
            ++row;
            lp.Aub.block(row, eidx(i), 1, n) = -witness[w].transpose();
            lp.Aub(row, eidx(i) + n) = -1.0;
            lp.bub(row) = 0.0;  // E_i(w) >= 0
            ++row;
        }
    }
    return lp;
}

Measurement unpack_measurement(const Theory& th, int m, const VectorXd& x) {
    const int n = th.rep.dim;
    Measurement out;
    for (int i = 0; i < m; ++i) {
        Effect eff;
        eff.e = x.segment(i * (n + 1), n);
        eff.c = x(i * (n + 1) + n);
        out.effects.push_back(std::move(eff));
    }
    // Re-impose the normalization identities exactly: simplex roundoff leaves
    // residuals of order the pivot tolerance.
    VectorXd esum = VectorXd::Zero(n);
    double csum = 0;
    for (const Effect& eff : out.effects) {
        esum += eff.e;
        csum += eff.c;
    }
    for (Effect& eff : out.effects) {
        eff.e -= esum / m;
        eff.c -= (csum - 1.0) / m;
    }
    return out;
}

}  // namespace

LpDistinguishResult distinguishability_lp(const Theory& theory,
                                          const std::vector<StateVector>& states,
                                          std::vector<StateVector> witness) {
    LpDistinguishResult res;
    // The initial witness set stays small: the cutting-plane loop below pulls
    // in whatever validity constraints actually bind.
    if (witness.empty()) {
        witness = theory.spec.d == 2 ? theory.orbit_sample(8, 5)
                                     : theory.orbit_sample_haar(48, 555);
    }
    std::vector<VectorXd> wit;
    auto add_witness = [&wit](const VectorXd& w) {
        for (const VectorXd& v : wit)
            if ((v - w).norm() < 1e-9) return;
        wit.push_back(w);
    };
    for (const auto& w : witness) add_witness(w.coords);
    std::vector<StateVector> haar_cert =
        theory.spec.d >= 3 ? default_witness(theory) : std::vector<StateVector>{};

    const int m = static_cast<int>(states.size());
    for (res.rounds = 1; res.rounds <= 20; ++res.rounds) {
        LpProblem lp = build_distinguish_lp(theory, states, wit);
        // L1-regularize the effect vectors (not the offsets): small |e| keeps
        // the candidate from oscillating between witness points.
        VectorXd w1 = VectorXd::Ones(lp.nvars);
        for (int i = 0; i < m; ++i) w1(i * (theory.rep.dim + 1) + theory.rep.dim) = 0;
        LpResult sol = lp_feasible(lp, 1e-8, &w1);
        if (sol.status == LpResult::Status::infeasible) {
            res.feasible = false;
            res.infeasibility_margin = sol.phase1_objective;
            return res;
        }
        if (sol.status == LpResult::Status::stalled) {
            res.feasible = false;
            res.note = "LP solver stalled; no conclusion";
            return res;
        }
        Measurement cand = unpack_measurement(theory, m, sol.x);
        bool ok = true;
        for (const Effect& eff : cand.effects) {
            EffectRange r = certify_effect(theory, eff, haar_cert, 1e-7);
            if (!r.violators.empty()) {
                ok = false;
                for (const auto& v : r.violators) add_witness(v);
            }
        }
        if (ok) {
            res.feasible = true;
            res.measurement = std::move(cand);
            return res;
        }
    }
    res.feasible = false;
    res.note = "cutting-plane loop exhausted 20 rounds without certification";
    return res;
}

MaxDistResult max_distinguishable_search(const Theory& theory, int budget,
                                         std::uint64_t seed) {
    // Candidate pool: deterministic orbit grid for d=2; basis-ray images
    // plus seeded Haar states for d >= 3.
    std::vector<StateVector> pool;
    if (theory.spec.d == 2) {
        pool = theory.orbit_sample(8, 5);
    } else {
        for (int k = 0; k < theory.spec.d; ++k)
            pool.push_back(theory.omega(PureRay::basis(theory.spec.d, k)));
        for (auto& w : theory.orbit_sample_haar(24, seed)) pool.push_back(w);
    }
    std::vector<StateVector> dedup;
    for (const auto& w : pool) {
        bool fresh = true;
        for (const auto& v : dedup)
            if ((v.coords - w.coords).norm() < 1e-8) fresh = false;
        if (fresh) dedup.push_back(w);
    }

    MaxDistResult out;
    out.states = {dedup.front()};
    out.lower_bound = 1;
    for (size_t i = 1; i < dedup.size() && budget > 0; ++i) {
        std::vector<StateVector> trial = out.states;
        trial.push_back(dedup[i]);
        LpDistinguishResult lp = distinguishability_lp(theory, trial);
        --budget;
        if (lp.feasible) {
            out.states = std::move(trial);
            out.measurement = std::move(lp.measurement);
            out.lower_bound = static_cast<int>(out.states.size());
        }
    }
    return out;
}

Effect pure_state_dual_effect(const Theory& theory, const PureRay& psi) {
    if (theory.spec.restriction != Restriction::PureStateDual)
        throw std::invalid_argument("pure_state_dual_effect: wrong restriction");
    if (theory.spec.d != 2 || theory.spec.J.size() != 1 ||
        theory.spec.J.front() % 2 == 0)
        throw std::invalid_argument(
            "pure_state_dual_effect: needs d=2 and a single odd j");
    return Effect{0.5 * theory.omega(psi).coords, 0.5};
}

}  // namespace gptlab
