#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gptlab/phenomenology.hpp"

using namespace gptlab;

TEST_CASE("x null vector structure") {
    XNullVector x1 = x_null_vector(1);
    CHECK(std::abs(x1.a_l(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(x1.vec(1)) < 1e-12);

    for (int j : {3, 5, 7}) {
        XNullVector xv = x_null_vector(j);
        CHECK(std::abs(xv.vec.norm() - 1.0) < 1e-12);
        CHECK(xv.a_l(j) > 0);
        for (int l = 3; l <= j; l += 2)
            CHECK(std::abs(xv.a_l(l)) > std::abs(xv.a_l(l - 2)));
        auto [DX, DZ] = spin_generators(j);
        CHECK((DX * xv.vec).norm() < 1e-10);
    }
    CHECK_THROWS(x_null_vector(2));
}

TEST_CASE("g(t): series vs matrix form and symmetries") {
    for (int j : {1, 3, 5, 7}) {
        for (int k = 0; k < 250; ++k) {
            const double t = 2 * M_PI * k / 250.0;
            const double g = g_of_t(j, t);  // throws on form disagreement
            CHECK(std::abs(g + g_of_t(j, t + M_PI)) < 1e-9);
            CHECK(std::abs(g - g_of_t(j, M_PI - t)) < 1e-9);
        }
        CHECK(std::abs(g_of_t(j, 0.0)) < 1e-12);
    }
}

TEST_CASE("g extrema: counts and locations") {
    auto e1 = find_g_extrema(1);
    REQUIRE(e1.size() == 2);
    CHECK(e1[0].is_max);
    CHECK(std::abs(e1[0].t - M_PI / 2) < 1e-8);
    CHECK(!e1[1].is_max);
    CHECK(std::abs(e1[1].t - 3 * M_PI / 2) < 1e-8);

    for (int j : {3, 5, 7}) {
        auto ext = find_g_extrema(j);
        int maxima = 0, minima = 0;
        for (const auto& e : ext) {
            (e.is_max ? maxima : minima) += 1;
            CHECK(std::abs(e.t - M_PI / 2) > 1e-3);
            CHECK(std::abs(e.t - 3 * M_PI / 2) > 1e-3);
        }
        CHECK(maxima == 2);
        CHECK(minima == 2);
        // A maximum and a minimum separated by exactly pi would mean the
        // distinguished pair is antipodal; check some gap differs from pi.
        bool non_pi_gap = false;
        for (const auto& a : ext)
            for (const auto& b : ext)
                if (a.is_max && !b.is_max &&
                    std::abs(std::abs(a.t - b.t) - M_PI) > 1e-3)
                    non_pi_gap = true;
        CHECK(non_pi_gap);
    }

    // j = 1 mod 4: g(pi/2) > 0 but beaten at pi/(2j).
    const double gp = g_of_t(5, M_PI / 2);
    CHECK(gp > 0);
    CHECK(g_of_t(5, M_PI / 10) > gp);
}

TEST_CASE("nonantipodal pair for j=3") {
    Theory th = Theory::build({2, {3}});
    NonantipodalPair pair = nonantipodal_pair(th);
    CHECK(pair.antipodal_gap > 1e-3);
    CHECK(pair.overlap > 1e-3);
    CHECK(pair.overlap < 1.0 - 1e-3);
    const Effect& E = pair.measurement.effects[0];
    CHECK(std::abs(evaluate(E, pair.omega_a) - 1.0) < 1e-7);
    CHECK(std::abs(evaluate(E, pair.omega_b)) < 1e-7);
    // The same measurement distinguishes the antipodes, with outcomes
    // swapped.
    StateVector na{-pair.omega_a.coords, StateVector::Kind::pure};
    StateVector nb{-pair.omega_b.coords, StateVector::Kind::pure};
    CHECK(std::abs(evaluate(E, na)) < 1e-7);
    CHECK(std::abs(evaluate(E, nb) - 1.0) < 1e-7);
}

TEST_CASE("nonantipodal construction degenerates for j=1") {
    Theory th = Theory::build({2, {1}});
    NonantipodalPair pair = nonantipodal_pair(th);
    CHECK(pair.antipodal_gap < 1e-6);
    CHECK(pair.overlap < 1e-6);
}

TEST_CASE("bit symmetry across theories") {
    auto r1 = bit_symmetry_test(Theory::build({2, {1}}), 200);
    CHECK(r1.bit_symmetric);
    for (const auto& p : r1.pairs) CHECK(p.overlap < 1e-6);

    auto r3 = bit_symmetry_test(Theory::build({2, {3}}));
    CHECK(!r3.bit_symmetric);
    REQUIRE(r3.witness_a >= 0);
    CHECK(std::abs(r3.pairs[r3.witness_a].overlap -
                   r3.pairs[r3.witness_b].overlap) > 1e-3);

    auto r12 = bit_symmetry_test(Theory::build({2, {1, 2}}));
    CHECK(!r12.bit_symmetric);

    auto rpsd =
        bit_symmetry_test(Theory::build({2, {3}, Restriction::PureStateDual}));
    CHECK(rpsd.bit_symmetric);
}

TEST_CASE("phase groups") {
    Theory q = Theory::build({2, {1}});
    // Z-type measurement on the qubit: U(1) phase group.
    VectorXd e = 0.5 * q.reference.coords;
    Measurement mz;
    mz.effects = {Effect{e, 0.5}, Effect{-e, 0.5}};
    auto pg = phase_group(q, mz);
    CHECK(pg.lie_dimension == 1);
    // The X-flip candidate swaps the outcomes, so it is not in the phase
    // group.
    PureRay z0 = PureRay::basis(2, 0), z1 = PureRay::basis(2, 1);
    auto pgs = phase_group(q, mz, &z0, &z1);
    CHECK(pgs.lie_dimension == 1);
    CHECK(!pgs.discrete_swap);

    Theory th3 = Theory::build({2, {3}});
    NonantipodalPair pair = nonantipodal_pair(th3);
    auto pg3 = phase_group(th3, pair.measurement, &pair.psi_a, &pair.psi_b);
    CHECK(pg3.lie_dimension == 0);
    CHECK(!pg3.discrete_swap);

    // Antipodal measurement on j=3 keeps its U(1).
    VectorXd e3 = 0.5 * th3.reference.coords;
    Measurement m3;
    m3.effects = {Effect{e3, 0.5}, Effect{-e3, 0.5}};
    CHECK(phase_group(th3, m3).lie_dimension == 1);

    // Pure-state-dual measurements have a U(1) phase group.
    Theory psd = Theory::build({2, {3}, Restriction::PureStateDual});
    Effect de = pure_state_dual_effect(psd, PureRay::basis(2, 0));
    Measurement md;
    md.effects = {de, Effect{-de.e, 0.5}};
    CHECK(phase_group(psd, md).lie_dimension == 1);
}

TEST_CASE("no-simultaneous-encoding game") {
    auto r3 = nse_game(Theory::build({2, {3}}));
    CHECK(std::abs(r3.p_guess_a - 1.0) < 1e-7);
    CHECK(r3.p_guess_a_prime > 0.51);

    auto r1 = nse_game(Theory::build({2, {1}}));
    CHECK(std::abs(r1.p_guess_a - 1.0) < 1e-7);
    CHECK(std::abs(r1.p_guess_a_prime - 0.5) < 1e-6);

    auto rd = nse_game(Theory::build({2, {3}, Restriction::PureStateDual}));
    CHECK(std::abs(rd.p_guess_a - 1.0) < 1e-7);
    CHECK(std::abs(rd.p_guess_a_prime - 0.5) < 1e-6);
}

TEST_CASE("three state demo") {
    ThreeStateDemo demo = three_state_demo();
    CHECK(demo.fit_residual < 1e-8);
    CHECK(demo.lp_certified);
    REQUIRE(demo.measurement.effects.size() == 3);
    // Effects have no j=1 component.
    for (const Effect& eff : demo.measurement.effects)
        CHECK(eff.e.head(3).norm() == 0.0);
    // The rays are pairwise non-orthogonal.
    for (int i = 0; i < 3; ++i)
        CHECK(demo.rays[i].overlap(demo.rays[(i + 1) % 3]) > 0.5);
}

TEST_CASE("restriction support for d=3") {
    auto r1 = restriction_support(3, 1, 40);
    REQUIRE(r1.blocks.size() == 2);
    CHECK(r1.blocks[0].has_support);
    CHECK(r1.blocks[1].has_support);
    CHECK(r1.max_offcharge < 1e-9);

    auto r2 = restriction_support(3, 2, 40);
    REQUIRE(r2.blocks.size() == 3);
    CHECK(r2.blocks[2].has_support);
    CHECK(r2.blocks[2].dim == 5);
    CHECK(r2.max_offcharge < 1e-9);
}
