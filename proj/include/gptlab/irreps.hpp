#pragma once

// Concrete real-linear representations D_j^d of PU(d): exact spin matrices
// for d=2, and Casimir-eigenspace extraction from symmetric tensor powers
// for d >= 3. All generator conventions:
//   * "halved" spin matrices D(K) satisfy D(e^{Kt/2}) = e^{D(K)t};
//   * block generators `gen` are true Lie-algebra homomorphism images of
//     su_basis(d), i.e. gen([A,B]) = [gen(A), gen(B)].

#include <utility>
#include <vector>

#include "gptlab/linalg.hpp"

namespace gptlab {

struct IrrepSpec {
    int d;
    int j;
};

inline constexpr int kDefaultSizeCap = 2000;
inline constexpr double kStructTol = 1e-9;   // structural identities
inline constexpr double kClusterTol = 1e-6;  // Casimir eigenvalue clustering

// Spin-j matrices in the weight basis, halved convention:
// D(Z) = i diag(j, j-1, ..., -j), D(X) tridiagonal with entries
// i sqrt(m(2j+1-m))/2. Requires j >= 1.
std::pair<MatrixXcd, MatrixXcd> spin_generators(int j);

// e^{Kt} for a represented generator K.
MatrixXcd exponentiate(const MatrixXcd& K, double t);

// One irreducible block D_j^d realized on R^dim.
struct IrrepBlock {
    int d = 0;
    int j = 0;
    int dim = 0;
    // Real antisymmetric images of su_basis(d) (true homomorphism).
    std::vector<MatrixXd> gen;
    // Unit vector invariant under the stabilizer U(1) x SU(d-1) of the
    // first basis ray; the reference state of the block.
    VectorXd ref;

    // d == 2 only: complex weight-basis data.
    MatrixXcd weight_x, weight_y, weight_z;  // halved-convention D(X), D(Y), D(Z)
    MatrixXcd weight_to_real;                // unitary A; A^dagger (.) A is real
    VectorXcd ref_weight;                    // = weight_to_real * ref

    // Image of Sum_a c_a K_a (coefficients in su_basis(d)).
    MatrixXd algebra_element(const VectorXd& coeffs) const;
    // Gamma restricted to this block, as a real orthogonal matrix.
    MatrixXd group_element_from_log(const VectorXd& coeffs) const;
};

IrrepBlock build_block(int d, int j, int size_cap = kDefaultSizeCap);

// Direct sum over a set J of labels, all with the same d.
struct RepRealization {
    int d = 0;
    std::vector<IrrepBlock> blocks;
    std::vector<int> offsets;  // block start indices in the stacked space
    int dim = 0;
    std::vector<MatrixXcd> su;  // cached su_basis(d)

    MatrixXd group_element(const MatrixXcd& U) const;
    // Direct-sum image of su_basis(d)[a].
    MatrixXd generator(int a) const;
    Eigen::VectorBlock<const VectorXd> block_of(const VectorXd& v, int b) const;
};

RepRealization direct_sum(int d, const std::vector<int>& J,
                          int size_cap = kDefaultSizeCap);

// The N-fold symmetric tensor power machinery: the real representation on
// Hermitian matrices over Sym^N(C^d).
struct SymTensorRep {
    int d = 0, N = 0, M = 0;  // M = binom(d+N-1, N)
    std::vector<std::vector<int>> occupations;  // lexicographic
    std::vector<MatrixXcd> lift;        // dGamma(K_a) on Sym^N(C^d)
    std::vector<MatrixXcd> herm_basis;  // orthonormal under tr(AB)
    std::vector<MatrixXd> adj;          // commutator action, real M^2 x M^2

    MatrixXcd sym_power(const MatrixXcd& U) const;  // Sym^N U
    VectorXd real_coords(const MatrixXcd& herm) const;
    MatrixXcd from_real_coords(const VectorXd& x) const;
};

SymTensorRep symtensor_generators(int d, int N, int size_cap = kDefaultSizeCap);

// Eigenspaces of the quadratic Casimir Sum_a adj_a^2 (sign-flipped so that
// eigenvalues are >= 0 and grow with j).
struct CasimirBlock {
    double eigenvalue = 0;
    int dim = 0;
    MatrixXd basis;  // M^2 x dim, orthonormal columns
};

std::vector<CasimirBlock> casimir_blocks(const SymTensorRep& rep,
                                         double tol = kClusterTol);

// Joint Cartan eigenvalues (weights) on a block, one entry per dimension,
// via recursive simultaneous diagonalization of the commuting generator
// images. Implemented for d in {2, 3}.
std::vector<VectorXd> cartan_weights(const IrrepBlock& blk);

}  // namespace gptlab
