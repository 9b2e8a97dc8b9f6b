#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gptlab/effects.hpp"

using namespace gptlab;

namespace {

PureRay random_ray(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0, 1);
    VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = cxd(g(rng), g(rng));
    return PureRay::from(v);
}

PureRay bloch_plus() {
    return PureRay::from((VectorXcd(2) << 1, 1).finished());
}

PureRay bloch_plus_i() {
    return PureRay::from((VectorXcd(2) << 1, cxd(0, 1)).finished());
}

}  // namespace

TEST_CASE("evaluate and the unit effect") {
    Theory th = Theory::build({2, {1}});
    Effect unit{VectorXd::Zero(th.rep.dim), 1.0};
    CHECK(evaluate(unit, th.reference) == 1.0);
    CHECK(evaluate(unit, StateVector{VectorXd::Zero(th.rep.dim)}) == 1.0);
    CHECK_THROWS(evaluate(Effect{VectorXd::Zero(2), 0.0}, th.reference));
    CHECK(validate_measurement(th, Measurement{{unit}}).valid);
}

TEST_CASE("antipodal two-outcome measurement") {
    for (int j : {1, 3}) {
        Theory th = Theory::build({2, {j}});
        Effect e0{0.5 * th.reference.coords, 0.5};
        StateVector anti{-th.reference.coords, StateVector::Kind::pure};
        CHECK(std::abs(evaluate(e0, th.reference) - 1.0) < 1e-12);
        CHECK(std::abs(evaluate(e0, anti)) < 1e-12);
        Measurement m{{e0, Effect{-e0.e, 0.5}}};
        auto rep = validate_measurement(th, m);
        CHECK(rep.valid);
        CHECK(rep.min_value > -1e-7);
        CHECK(rep.max_value < 1 + 1e-7);
    }
}

TEST_CASE("orbit extrema: unique pair for j=1") {
    Theory th = Theory::build({2, {1}});
    VectorXd target = th.omega(bloch_plus()).coords;
    Effect eff{0.5 * target, 0.5};
    OrbitExtrema ex = effect_extrema_over_orbit(th, eff);
    CHECK(std::abs(ex.max_value - 1.0) < 1e-9);
    CHECK(std::abs(ex.min_value) < 1e-9);
    REQUIRE(ex.argmax_states.size() == 1);
    REQUIRE(ex.argmin_states.size() == 1);
    CHECK((ex.argmax_states[0] - target).norm() < 1e-6);
    CHECK((ex.argmin_states[0] + target).norm() < 1e-6);
}

TEST_CASE("orbit extrema: doubled extrema for j=3") {
    Theory th = Theory::build({2, {3}});
    MatrixXd Mx = 0.5 * std::sqrt(2.0) * th.rep.generator(0);
    Effect eff{Mx * th.reference.coords, 0.0};
    OrbitExtrema ex = effect_extrema_over_orbit(th, eff);
    CHECK(ex.argmax_states.size() == 2);
    CHECK(ex.argmin_states.size() == 2);
    CHECK(std::abs(ex.max_value + ex.min_value) < 1e-9);  // odd symmetry
}

TEST_CASE("orbit extrema: constant effect") {
    Theory th = Theory::build({2, {2}});
    Effect eff{VectorXd::Zero(th.rep.dim), 0.25};
    OrbitExtrema ex = effect_extrema_over_orbit(th, eff);
    CHECK(ex.min_value == doctest::Approx(0.25));
    CHECK(ex.max_value == doctest::Approx(0.25));
}

TEST_CASE("delta-triple on the Bloch ball is never a valid measurement") {
    Theory th = Theory::build({2, {1}});
    std::vector<VectorXd> w = {th.omega(PureRay::basis(2, 0)).coords,
                               th.omega(PureRay::basis(2, 1)).coords,
                               th.omega(bloch_plus()).coords};
    // Solve E_i(w_s) = delta_is exactly for the first two effects and close
    // the measurement with the unit-effect complement.
    const int n = th.rep.dim;
    MatrixXd A(3, n + 1);
    for (int s = 0; s < 3; ++s) {
        A.block(s, 0, 1, n) = w[s].transpose();
        A(s, n) = 1.0;
    }
    Measurement m;
    for (int i = 0; i < 2; ++i) {
        VectorXd rhs = VectorXd::Zero(3);
        rhs(i) = 1.0;
        VectorXd sol = A.completeOrthogonalDecomposition().solve(rhs);
        m.effects.push_back({sol.head(n), sol(n)});
    }
    m.effects.push_back({-m.effects[0].e - m.effects[1].e,
                         1.0 - m.effects[0].c - m.effects[1].c});
    for (int i = 0; i < 3; ++i)
        for (int s = 0; s < 3; ++s)
            CHECK(std::abs(evaluate(m.effects[i], StateVector{w[s]}) -
                           (i == s ? 1.0 : 0.0)) < 1e-9);
    CHECK_FALSE(validate_measurement(th, m).valid);
    // The antipodes expose the negativity: probabilities sum to -1 there.
    double total = 0;
    for (int i = 0; i < 3; ++i)
        total += evaluate(m.effects[i], StateVector{-w[i]});
    CHECK(std::abs(total + 1.0) < 1e-9);
}

TEST_CASE("LP: antipodal pair is distinguishable, any qubit triple is not") {
    Theory th = Theory::build({2, {1}});
    StateVector anti{-th.reference.coords, StateVector::Kind::pure};
    auto pair = distinguishability_lp(th, {th.reference, anti});
    CHECK(pair.feasible);
    CHECK(validate_measurement(th, pair.measurement).valid);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<StateVector> triple;
        for (int k = 0; k < 3; ++k) triple.push_back(th.omega(random_ray(2, rng)));
        auto res = distinguishability_lp(th, triple);
        CHECK_FALSE(res.feasible);
        CHECK(res.note.empty());
    }
}

TEST_CASE("LP: no odd irreducible qubit theory distinguishes three states") {
    std::mt19937_64 rng(11);
    for (int j : {3, 5, 7}) {
        Theory th = Theory::build({2, {j}});
        int trials = (j == 3) ? 10 : 3;
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<StateVector> triple;
            for (int k = 0; k < 3; ++k)
                triple.push_back(th.omega(random_ray(2, rng)));
            auto res = distinguishability_lp(th, triple);
            CHECK_FALSE(res.feasible);
            CHECK(res.note.empty());
        }
    }
}

TEST_CASE("LP: J={1,2} distinguishes the three axis states") {
    Theory th = Theory::build({2, {1, 2}});
    std::vector<StateVector> axes = {th.omega(PureRay::basis(2, 0)),
                                     th.omega(bloch_plus()),
                                     th.omega(bloch_plus_i())};
    auto res = distinguishability_lp(th, axes);
    CHECK(res.feasible);
    CHECK(validate_measurement(th, res.measurement).valid);
}

TEST_CASE("max distinguishable states") {
    auto r1 = max_distinguishable_search(Theory::build({2, {1}}), 60);
    CHECK(r1.lower_bound == 2);
    auto r3 = max_distinguishable_search(Theory::build({2, {3}}), 60);
    CHECK(r3.lower_bound == 2);
    auto r12 = max_distinguishable_search(Theory::build({2, {1, 2}}), 60);
    CHECK(r12.lower_bound >= 3);
    CHECK(validate_measurement(Theory::build({2, {1, 2}}), r12.measurement).valid);
}

TEST_CASE("pure-state-dual effects") {
    Theory th = Theory::build({2, {3}, Restriction::PureStateDual});
    Effect at0 = pure_state_dual_effect(th, PureRay::basis(2, 0));
    CHECK(std::abs(evaluate(at0, th.reference) - 1.0) < 1e-9);
    CHECK(std::abs(evaluate(at0, StateVector{VectorXd::Zero(th.rep.dim)}) - 0.5) <
          1e-12);
    OrbitExtrema ex = effect_extrema_over_orbit(th, at0);
    CHECK(ex.min_value > -1e-7);
    CHECK(ex.max_value < 1 + 1e-7);

    Theory wrong = Theory::build({2, {3}});
    CHECK_THROWS(pure_state_dual_effect(wrong, PureRay::basis(2, 0)));
    Theory even = Theory::build({2, {2}, Restriction::PureStateDual});
    CHECK_THROWS(pure_state_dual_effect(even, PureRay::basis(2, 0)));
}
