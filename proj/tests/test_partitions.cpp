#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gptlab/partitions.hpp"

using namespace gptlab;

TEST_CASE("dimension formula known values") {
    CHECK(dimension_formula(2, 0) == 1);
    CHECK(dimension_formula(2, 1) == 3);   // qubit Bloch ball, d^2-1
    CHECK(dimension_formula(2, 2) == 5);
    CHECK(dimension_formula(2, 3) == 7);   // 2j+1 for d=2
    CHECK(dimension_formula(3, 1) == 8);   // adjoint of su(3)
    CHECK(dimension_formula(3, 2) == 27);
    CHECK(dimension_formula(4, 1) == 15);
    CHECK_THROWS(dimension_formula(1, 1));
    CHECK_THROWS(dimension_formula(2, -1));
}

TEST_CASE("interlacings of [2,1,0]") {
    auto mus = interlacings(Partition({2, 1, 0}));
    REQUIRE(mus.size() == 4);
    CHECK(mus[0] == Partition({1, 0}));
    CHECK(mus[1] == Partition({1, 1}));
    CHECK(mus[2] == Partition({2, 0}));
    CHECK(mus[3] == Partition({2, 1}));
}

TEST_CASE("interlacings of trivial partitions") {
    auto mus = interlacings(Partition({0, 0}));
    REQUIRE(mus.size() == 1);
    CHECK(mus[0] == Partition({0}));
}

TEST_CASE("unique constant interlacing partition of [2j,j,0]") {
    for (int j = 1; j <= 4; ++j) {
        int constant = 0;
        for (const auto& mu : interlacings(highest_weight_partition(3, j))) {
            bool all_equal = true;
            for (int p : mu.parts) all_equal &= (p == mu.parts[0]);
            if (all_equal && mu.parts[0] > 0) {
                ++constant;
                CHECK(mu == Partition({j, j}));
            }
        }
        CHECK(constant == 1);
    }
}

TEST_CASE("u1 charge examples") {
    Partition lambda({2, 1, 0});
    CHECK(u1_charge(lambda, Partition({1, 1})) == Rational(0));
    CHECK(u1_charge(lambda, Partition({2, 1})) == Rational(-3, 2));
    CHECK(u1_charge(Partition({0, 0, 0}), Partition({0, 0})) == Rational(0));
    CHECK_THROWS(u1_charge(lambda, Partition({3, 0})));
}

TEST_CASE("Weyl dimension oracle") {
    CHECK(su_dim(Partition({1, 0})) == 2);
    CHECK(su_dim(Partition({2, 0})) == 3);
    CHECK(su_dim(Partition({2, 1})) == 2);  // SU(2): equivalent to [1,0]
    CHECK(su_dim(Partition({1, 0, 0})) == 3);
    CHECK(su_dim(Partition({2, 1, 0})) == 8);
    CHECK(su_dim(Partition({4, 2, 0})) == 27);
}

TEST_CASE("interlacing dimensions sum to D_j^d") {
    // Sum over interlacings of [2,1,0]: 2+3+1+2 = 8 = D_1^3.
    for (int d = 3; d <= 5; ++d) {
        for (int j = 1; j <= 3; ++j) {
            std::int64_t sum = 0;
            for (const auto& b : branch_blocks(d, j)) sum += b.su_dim;
            CHECK(sum == dimension_formula(d, j));
        }
    }
}

TEST_CASE("zero-charge branching is the D_i^{d-1} tower") {
    auto check_tower = [](int d, int j) {
        auto labels = branch_zero_charge(d, j);
        REQUIRE(static_cast<int>(labels.size()) == j + 1);
        // Expected Dynkin labels (i,0,...,0,i) for i=0..j, in some order.
        int trivial = 0;
        std::int64_t dim_sum = 0;
        for (const auto& l : labels) {
            REQUIRE(static_cast<int>(l.coeffs.size()) == d - 2);
            bool is_trivial = true;
            for (int c : l.coeffs) is_trivial &= (c == 0);
            if (is_trivial) ++trivial;
        }
        CHECK(trivial == 1);
        // Dimensions via the zero-charge branch blocks.
        for (const auto& b : branch_blocks(d, j))
            if (b.u1_charge == Rational(0)) dim_sum += b.su_dim;
        std::int64_t expect = 0;
        for (int i = 0; i <= j; ++i) expect += dimension_formula(d - 1, i);
        CHECK(dim_sum == expect);
    };
    check_tower(3, 1);  // 1 + 3
    check_tower(3, 2);  // 1 + 3 + 5
    check_tower(4, 1);  // 1 + 8
    check_tower(4, 2);  // 1 + 8 + 27
    check_tower(5, 2);
}

TEST_CASE("zero charge exactly on the returned blocks") {
    for (int j = 1; j <= 3; ++j) {
        auto zero = branch_zero_charge(3, j);
        int count = 0;
        for (const auto& b : branch_blocks(3, j))
            if (b.u1_charge == Rational(0)) ++count;
        CHECK(count == static_cast<int>(zero.size()));
    }
}
