#pragma once

// Shared dense linear algebra helpers: su(d) bases, principal logs of
// unitaries, null spaces, and the complex-to-real basis change for
// representations of real type.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace gptlab {

using cxd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Orthonormal basis of su(d): anti-Hermitian traceless matrices K_a with
// tr(K_a^dagger K_b) = delta_ab. For d=2 the order is X/sqrt2, Y/sqrt2,
// Z/sqrt2 with X = i sigma_x, Y = i sigma_y, Z = i sigma_z.
std::vector<MatrixXcd> su_basis(int d);

// Coefficients of an anti-Hermitian traceless K in su_basis(d).
VectorXd su_coefficients(const MatrixXcd& K, const std::vector<MatrixXcd>& basis);

// Principal logarithm of a unitary, projected onto su(d) (trace removed).
MatrixXcd principal_log_su(const MatrixXcd& U);

// Matrix exponential of an anti-Hermitian matrix via its eigendecomposition.
MatrixXcd exp_antihermitian(const MatrixXcd& K);

// Columns spanning ker(A), from the SVD, with singular values below tol.
MatrixXcd null_space(const MatrixXcd& A, double tol = 1e-9);
MatrixXd null_space_real(const MatrixXd& A, double tol = 1e-9);

// Haar-random U in SU(d) from a seeded engine (Ginibre + QR, det fixed).
MatrixXcd haar_su(int d, std::mt19937_64& rng);

// Unitary in SU(d) whose first column is psi (unit vector).
MatrixXcd complete_to_su(const VectorXcd& psi);

// Complex-to-real basis change for an irreducible representation of real
// type. Given generator images rho_a (anti-Hermitian, irreducible), returns
// a unitary A such that A^dagger rho_a A is real for every a. If seed is
// nonzero it is used (after projection onto the invariant real form) as the
// first basis vector. Throws if the representation is not of real type.
MatrixXcd real_form_basis(const std::vector<MatrixXcd>& rho,
                          const VectorXcd& seed = VectorXcd());

// Largest absolute imaginary part of any entry.
double max_imag(const MatrixXcd& m);

// Cluster sorted eigenvalues into groups closer than tol; returns the index
// ranges [begin, end) of each cluster.
std::vector<std::pair<int, int>> cluster_eigenvalues(const VectorXd& sorted,
                                                     double tol);

}  // namespace gptlab
