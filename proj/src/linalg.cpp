#include "gptlab/linalg.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

using Eigen::kroneckerProduct;

namespace gptlab {

std::vector<MatrixXcd> su_basis(int d) {
    if (d < 2) throw std::invalid_argument("su_basis: d >= 2 required");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<MatrixXcd> basis;
    basis.reserve(d * d - 1);
    for (int p = 0; p < d; ++p) {
        for (int q = p + 1; q < d; ++q) {
            MatrixXcd a = MatrixXcd::Zero(d, d);
            a(p, q) = cxd(0, inv_sqrt2);
            a(q, p) = cxd(0, inv_sqrt2);
            basis.push_back(a);
            MatrixXcd b = MatrixXcd::Zero(d, d);
            b(p, q) = cxd(inv_sqrt2, 0);
            b(q, p) = cxd(-inv_sqrt2, 0);
            basis.push_back(b);
        }
    }
    for (int l = 1; l < d; ++l) {
        MatrixXcd h = MatrixXcd::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int k = 0; k < l; ++k) h(k, k) = cxd(0, norm);
        h(l, l) = cxd(0, -l * norm);
        basis.push_back(h);
    }
    return basis;
}

VectorXd su_coefficients(const MatrixXcd& K, const std::vector<MatrixXcd>& basis) {
    VectorXd c(basis.size());
    for (size_t a = 0; a < basis.size(); ++a)
        c(a) = (basis[a].adjoint() * K).trace().real();
    return c;
}

MatrixXcd principal_log_su(const MatrixXcd& U) {
    Eigen::ComplexEigenSolver<MatrixXcd> es(U);
    const VectorXcd& ev = es.eigenvalues();
    const MatrixXcd& V = es.eigenvectors();
    VectorXcd logs(ev.size());
    for (int i = 0; i < ev.size(); ++i)
        logs(i) = cxd(0, std::arg(ev(i)));
    // Eigenvectors of a unitary can be orthonormalized; for numerical
    // robustness use the inverse rather than the adjoint.
    MatrixXcd K = V * logs.asDiagonal() * V.inverse();
    K = 0.5 * (K - K.adjoint().eval());  // enforce anti-Hermiticity
    cxd tr = K.trace() / static_cast<double>(U.rows());
    K -= tr * MatrixXcd::Identity(U.rows(), U.cols());
    return K;
}

MatrixXcd exp_antihermitian(const MatrixXcd& K) {
    // K = i H with H Hermitian; exp(K) = W exp(i diag) W^dagger.
    MatrixXcd H = K / cxd(0, 1);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
    VectorXcd phases(es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(cxd(0, es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd null_space(const MatrixXcd& A, double tol) {
    Eigen::JacobiSVD<MatrixXcd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    return svd.matrixV().rightCols(A.cols() - rank);
}

MatrixXd null_space_real(const MatrixXd& A, double tol) {
    Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    return svd.matrixV().rightCols(A.cols() - rank);
}

MatrixXcd haar_su(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXcd Z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Z(i, j) = cxd(g(rng), g(rng));
    Eigen::HouseholderQR<MatrixXcd> qr(Z);
    MatrixXcd Q = qr.householderQ();
    MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) Q.col(i) *= R(i, i) / std::abs(R(i, i));
    cxd det = Q.determinant();
    Q.col(0) /= det;
    return Q;
}

MatrixXcd complete_to_su(const VectorXcd& psi) {
    const int d = static_cast<int>(psi.size());
    MatrixXcd U = MatrixXcd::Zero(d, d);
    U.col(0) = psi.normalized();
    // Gram-Schmidt completion from the standard basis.
    int next = 0;
    for (int c = 1; c < d; ++c) {
        VectorXcd v;
        double nrm = 0;
        while (nrm < 0.5 && next < d) {
            v = VectorXcd::Unit(d, next++);
            for (int k = 0; k < c; ++k) v -= U.col(k).dot(v) * U.col(k);
            nrm = v.norm();
        }
        if (nrm < 0.5) throw std::runtime_error("complete_to_su failed");
        U.col(c) = v / nrm;
    }
    cxd det = U.determinant();
    U.col(d - 1) /= det;
    return U;
}

double max_imag(const MatrixXcd& m) {
    return m.imag().cwiseAbs().maxCoeff();
}

MatrixXcd real_form_basis(const std::vector<MatrixXcd>& rho, const VectorXcd& seed) {
    const int n = static_cast<int>(rho.front().rows());
    // An invariant real structure is an antiunitary J(v) = C conj(v) with
    // rho_a J = J rho_a, i.e. rho_a C = C conj(rho_a). In vec form
    // (column-major) that reads (I (x) rho_a - rho_a^dagger (x) I) vec C = 0.
    MatrixXcd stacked(rho.size() * n * n, n * n);
    const MatrixXcd eye = MatrixXcd::Identity(n, n);
    for (size_t a = 0; a < rho.size(); ++a) {
        stacked.middleRows(a * n * n, n * n) =
            kroneckerProduct(eye, rho[a]) - kroneckerProduct(rho[a].adjoint(), eye);
    }
    MatrixXcd ker = null_space(stacked, 1e-8);
    if (ker.cols() != 1)
        throw std::runtime_error("real_form_basis: intertwiner space dimension " +
                                 std::to_string(ker.cols()) + " (expected 1)");
    MatrixXcd C = Eigen::Map<MatrixXcd>(ker.col(0).data(), n, n);
    // For an irreducible representation C is proportional to a unitary.
    C /= std::sqrt((C.adjoint() * C).trace().real() / n);
    cxd type = (C * C.conjugate()).trace() / static_cast<double>(n);
    if (std::abs(type - cxd(1, 0)) > 1e-6)
        throw std::runtime_error("real_form_basis: representation is not of real type");
    // Symmetrize against roundoff: C conj(C) = I exactly in theory.
    auto fixed_point = [&](const VectorXcd& v) { return VectorXcd(v + C * v.conjugate()); };

    std::vector<VectorXcd> candidates;
    if (seed.size() == n) {
        candidates.push_back(seed);
        candidates.push_back(cxd(0, 1) * seed);  // in case seed + J(seed) = 0
    }
    for (int i = 0; i < n; ++i) candidates.push_back(VectorXcd::Unit(n, i));
    for (int i = 0; i < n; ++i) candidates.push_back(cxd(0, 1) * VectorXcd::Unit(n, i));

    MatrixXcd A(n, n);
    int have = 0;
    for (const VectorXcd& v : candidates) {
        if (have == n) break;
        VectorXcd r = fixed_point(v);
        for (int k = 0; k < have; ++k) r -= A.col(k).dot(r) * A.col(k);
        double nrm = r.norm();
        if (nrm > 1e-6) A.col(have++) = r / nrm;
    }
    if (have != n) throw std::runtime_error("real_form_basis: basis construction failed");
    return A;
}

std::vector<std::pair<int, int>> cluster_eigenvalues(const VectorXd& sorted, double tol) {
    std::vector<std::pair<int, int>> out;
    int begin = 0;
    for (int i = 1; i <= sorted.size(); ++i) {
        if (i == sorted.size() || std::abs(sorted(i) - sorted(i - 1)) > tol) {
            out.emplace_back(begin, i);
            begin = i;
        }
    }
    return out;
}

}  // namespace gptlab
