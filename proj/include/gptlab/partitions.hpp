#pragma once

// Partition / Dynkin-label combinatorics and the SU(d) -> SU(d-1) x U(1)
// branching machinery. Everything here is exact integer or rational
// arithmetic: U(1) charges like |lambda| - d/(d-1)|mu| have to be compared
// to zero exactly.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace gptlab {

using Rational = boost::rational<std::int64_t>;

// Non-increasing list of non-negative integers. SU(d) irrep labels pin the
// last part to zero (see highest_weight_partition) so the partition <-> irrep
// map is one-to-one; interlacing partitions are unconstrained.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int num_parts() const { return static_cast<int>(parts.size()); }
    int size() const;  // |lambda|
    bool operator==(const Partition&) const = default;
    std::string str() const;
};

// Dynkin label of an SU(n) irrep: n-1 non-negative coefficients,
// coeffs[i] = parts[i] - parts[i+1].
struct DynkinLabel {
    std::vector<int> coeffs;
    bool operator==(const DynkinLabel&) const = default;
    std::string str() const;
};

DynkinLabel dynkin_of(const Partition& lambda);

// One SU(d-1) block in the branching of an SU(d) irrep, with its U(1) charge.
struct BranchBlock {
    Partition mu;        // d-1 parts
    Rational u1_charge;  // |lambda| - d/(d-1) |mu|
    std::int64_t su_dim; // dimension of the SU(d-1) irrep mu
};

// D_j^d = (2j/(d-1) + 1) * prod_{k=1}^{d-2} (1 + j/k)^2, evaluated in exact
// rational arithmetic. j = 0 is the trivial representation (dimension 1).
// A non-integer result would mean a bug, and throws.
std::int64_t dimension_formula(int d, int j);

// The partition [2j, j, ..., j, 0] (d parts) labelling D_j^d.
Partition highest_weight_partition(int d, int j);

// All mu (with one part fewer) interlacing lambda:
//   lambda_1 >= mu_1 >= lambda_2 >= ... >= mu_{d-1} >= lambda_d,
// in lexicographic order.
std::vector<Partition> interlacings(const Partition& lambda);

bool interlaces(const Partition& mu, const Partition& lambda);

// |lambda| - d/(d-1) |mu| for mu interlacing lambda (d = lambda.num_parts()).
Rational u1_charge(const Partition& lambda, const Partition& mu);

// Dimension of the SU(n) irrep labelled by mu (n = mu.num_parts()), via the
// Weyl dimension formula. Exact.
std::int64_t su_dim(const Partition& mu);

// Full branching of D_j^d under SU(d-1) x U(1): one block per interlacing mu.
std::vector<BranchBlock> branch_blocks(int d, int j);

// Dynkin labels of the SU(d-1) blocks with zero U(1) charge in the
// restriction of D_j^d. Must come out as {(i,0,...,0,i) : i = 0..j}.
std::vector<DynkinLabel> branch_zero_charge(int d, int j);

}  // namespace gptlab
