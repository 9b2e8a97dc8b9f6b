#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gptlab/symtensor.hpp"

using namespace gptlab;

namespace {

PureRay random_ray(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0, 1);
    VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = cxd(g(rng), g(rng));
    return PureRay::from(v);
}

}  // namespace

TEST_CASE("omega_N basics") {
    std::mt19937_64 rng(2);
    PureRay psi = random_ray(2, rng);
    SymTensorState s1 = omega_N(psi, 1);
    MatrixXcd rho = psi.amplitudes * psi.amplitudes.adjoint();
    CHECK((s1.matrix - rho).cwiseAbs().maxCoeff() < 1e-14);

    SymTensorState s2 = omega_N(psi, 2);
    REQUIRE(s2.matrix.rows() == 3);
    CHECK(std::abs(s2.matrix.trace().real() - 1.0) < 1e-12);
    // Rank one: squared matrix equals itself.
    CHECK((s2.matrix * s2.matrix - s2.matrix).cwiseAbs().maxCoeff() < 1e-12);

    SymTensorState s3 = omega_N(random_ray(3, rng), 2);
    REQUIRE(s3.matrix.rows() == 6);
    CHECK(std::abs(s3.matrix.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("unitary covariance of omega_N") {
    std::mt19937_64 rng(4);
    for (auto [d, N] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        SymTensorRep rep = symtensor_generators(d, N);
        for (int trial = 0; trial < 4; ++trial) {
            PureRay psi = random_ray(d, rng);
            MatrixXcd U = haar_su(d, rng);
            MatrixXcd G = rep.sym_power(U);
            MatrixXcd lhs = omega_N(PureRay::from(U * psi.amplitudes), N).matrix;
            MatrixXcd rhs = G * omega_N(psi, N).matrix * G.adjoint();
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("block decomposition bookkeeping") {
    auto b21 = block_decomposition(2, 1);
    REQUIRE(b21.size() == 2);
    CHECK(b21[0].dim == 1);
    CHECK(b21[1].dim == 3);
    CHECK(b21[0].multiplicity == 1);
    CHECK(b21[1].multiplicity == 1);

    auto b22 = block_decomposition(2, 2);
    REQUIRE(b22.size() == 3);
    for (const auto& b : b22) CHECK(b.multiplicity == 1);
    CHECK(b22[2].dim == 5);

    auto b31 = block_decomposition(3, 1);
    REQUIRE(b31.size() == 2);
    CHECK(b31[1].dim == 8);

    for (auto [d, N] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {4, 2}}) {
        std::int64_t sum = 0, M = 1;
        for (const auto& b : block_decomposition(d, N))
            sum += static_cast<std::int64_t>(b.multiplicity) * b.dim;
        for (int k = 1; k <= N; ++k) M = M * (d + k - 1) / k;
        CHECK(sum == M * M);
        CHECK(block_decomposition(d, N).front().multiplicity == 1);
        CHECK(block_decomposition(d, N).back().multiplicity == 1);
    }
}

TEST_CASE("crosscheck: unit effect") {
    Theory th = Theory::build({2, {1}});
    Effect unit{VectorXd::Zero(th.rep.dim), 1.0};
    auto r = crosscheck_probability(th, PureRay::basis(2, 0), unit);
    CHECK(std::abs(r.p_affine - 1.0) < 1e-12);
    CHECK(std::abs(r.p_tensor - 1.0) < 1e-9);
}

TEST_CASE("crosscheck: affine and tensor paths agree") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0, 1);
    for (auto spec : std::vector<TheorySpec>{{2, {1}}, {2, {3}}, {2, {1, 2}},
                                             {3, {1}}}) {
        Theory th = Theory::build(spec);
        for (int trial = 0; trial < 20; ++trial) {
            PureRay psi = random_ray(spec.d, rng);
            Effect eff{VectorXd::NullaryExpr(th.rep.dim, [&](int) { return g(rng); }),
                       g(rng)};
            auto r = crosscheck_probability(th, psi, eff);
            CHECK(std::abs(r.p_affine - r.p_tensor) < 1e-9);
        }
    }
}

TEST_CASE("crosscheck: N above max J") {
    Theory th = Theory::build({2, {1}});
    std::mt19937_64 rng(13);
    PureRay psi = random_ray(2, rng);
    Effect eff{0.5 * th.reference.coords, 0.5};
    auto r = crosscheck_probability(th, psi, eff, 3);
    CHECK(r.N == 3);
    CHECK(std::abs(r.p_affine - r.p_tensor) < 1e-9);
    CHECK_THROWS(crosscheck_probability(Theory::build({2, {3}}), psi, eff, 2));
}
