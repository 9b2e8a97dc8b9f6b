#include "gptlab/irreps.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "gptlab/partitions.hpp"

namespace gptlab {

std::pair<MatrixXcd, MatrixXcd> spin_generators(int j) {
    if (j < 1) throw std::invalid_argument("spin_generators: j >= 1 required");
    const int n = 2 * j + 1;
    MatrixXcd DZ = MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) DZ(k, k) = cxd(0, j - k);
    MatrixXcd DX = MatrixXcd::Zero(n, n);
    for (int m = 1; m <= 2 * j; ++m) {
        const double v = std::sqrt(static_cast<double>(m) * (2 * j + 1 - m)) / 2.0;
        DX(m - 1, m) = cxd(0, v);
        DX(m, m - 1) = cxd(0, v);
    }
    return {DX, DZ};
}

MatrixXcd exponentiate(const MatrixXcd& K, double t) {
    return exp_antihermitian(K * t);
}

MatrixXd IrrepBlock::algebra_element(const VectorXd& coeffs) const {
    MatrixXd S = MatrixXd::Zero(dim, dim);
    for (int a = 0; a < static_cast<int>(gen.size()); ++a) S += coeffs(a) * gen[a];
    return S;
}

MatrixXd IrrepBlock::group_element_from_log(const VectorXd& coeffs) const {
    MatrixXcd E = exp_antihermitian(algebra_element(coeffs).cast<cxd>());
    if (max_imag(E) > kStructTol)
        throw std::runtime_error("group_element_from_log: non-real exponential");
    return E.real();
}

namespace {

// Generators of the stabilizer u(1) + su(d-1) of the ray C e_0, expressed in
// su_basis(d) coefficients.
std::vector<VectorXd> stabilizer_coeffs(int d, const std::vector<MatrixXcd>& su) {
    std::vector<VectorXd> out;
    MatrixXcd T = MatrixXcd::Zero(d, d);
    T(0, 0) = cxd(0, d - 1);
    for (int k = 1; k < d; ++k) T(k, k) = cxd(0, -1);
    out.push_back(su_coefficients(T, su));
    if (d >= 3) {
        for (const MatrixXcd& S : su_basis(d - 1)) {
            MatrixXcd E = MatrixXcd::Zero(d, d);
            E.bottomRightCorner(d - 1, d - 1) = S;
            out.push_back(su_coefficients(E, su));
        }
    }
    return out;
}

VectorXd stabilizer_fixed_vector(const IrrepBlock& blk,
                                 const std::vector<MatrixXcd>& su) {
    const auto stab = stabilizer_coeffs(blk.d, su);
    MatrixXd stacked(static_cast<int>(stab.size()) * blk.dim, blk.dim);
    for (int s = 0; s < static_cast<int>(stab.size()); ++s)
        stacked.middleRows(s * blk.dim, blk.dim) = blk.algebra_element(stab[s]);
    MatrixXd ker = null_space_real(stacked, 1e-8);
    if (ker.cols() != 1)
        throw std::runtime_error("reference vector: stabilizer kernel has dimension " +
                                 std::to_string(ker.cols()) + " (expected 1)");
    VectorXd ref = ker.col(0);
    int imax = 0;
    ref.cwiseAbs().maxCoeff(&imax);
    if (ref(imax) < 0) ref = -ref;
    return ref / ref.norm();
}

IrrepBlock build_block_spin(int j) {
    IrrepBlock blk;
    blk.d = 2;
    blk.j = j;
    blk.dim = 2 * j + 1;
    auto [DX, DZ] = spin_generators(j);
    MatrixXcd DY = DX * DZ - DZ * DX;
    blk.weight_x = DX;
    blk.weight_y = DY;
    blk.weight_z = DZ;
    // True homomorphism images of su_basis(2) = {X,Y,Z}/sqrt2 are
    // {2 DX, 2 DY, 2 DZ}/sqrt2.
    const double s = 2.0 / std::sqrt(2.0);
    std::vector<MatrixXcd> rho = {s * DX, s * DY, s * DZ};
    // Seed the real form with the zero-weight vector so the reference state
    // lands on the first real coordinate.
    MatrixXcd A = real_form_basis(rho, VectorXcd::Unit(blk.dim, j));
    blk.weight_to_real = A;
    for (const MatrixXcd& r : rho) {
        MatrixXcd g = A.adjoint() * r * A;
        if (max_imag(g) > kStructTol)
            throw std::runtime_error("spin realification produced a non-real generator");
        blk.gen.push_back(g.real());
    }
    return blk;
}

IrrepBlock build_block_casimir(int d, int j, int size_cap) {
    IrrepBlock blk;
    blk.d = d;
    blk.j = j;
    blk.dim = static_cast<int>(dimension_formula(d, j));
    SymTensorRep rep = symtensor_generators(d, j, size_cap);
    auto blocks = casimir_blocks(rep);
    const CasimirBlock& top = blocks.back();
    if (top.dim != blk.dim)
        throw std::runtime_error("Casimir extraction: top block dimension " +
                                 std::to_string(top.dim) + " != expected " +
                                 std::to_string(blk.dim));
    for (const MatrixXd& a : rep.adj)
        blk.gen.push_back(top.basis.transpose() * a * top.basis);
    return blk;
}

}  // namespace

IrrepBlock build_block(int d, int j, int size_cap) {
    if (d < 2) throw std::invalid_argument("build_block: d >= 2 required");
    if (j < 1) throw std::invalid_argument("build_block: j >= 1 required");
    IrrepBlock blk = (d == 2) ? build_block_spin(j) : build_block_casimir(d, j, size_cap);
    auto su = su_basis(d);
    blk.ref = stabilizer_fixed_vector(blk, su);
    if (d == 2) blk.ref_weight = blk.weight_to_real * blk.ref;
    return blk;
}

MatrixXd RepRealization::group_element(const MatrixXcd& U) const {
    MatrixXcd K = principal_log_su(U);
    VectorXd coeffs = su_coefficients(K, su);
    MatrixXd G = MatrixXd::Zero(dim, dim);
    for (size_t b = 0; b < blocks.size(); ++b) {
        G.block(offsets[b], offsets[b], blocks[b].dim, blocks[b].dim) =
            blocks[b].group_element_from_log(coeffs);
    }
    return G;
}

MatrixXd RepRealization::generator(int a) const {
    MatrixXd G = MatrixXd::Zero(dim, dim);
    for (size_t b = 0; b < blocks.size(); ++b)
        G.block(offsets[b], offsets[b], blocks[b].dim, blocks[b].dim) = blocks[b].gen[a];
    return G;
}

Eigen::VectorBlock<const VectorXd> RepRealization::block_of(const VectorXd& v,
                                                            int b) const {
    return v.segment(offsets[b], blocks[b].dim);
}

RepRealization direct_sum(int d, const std::vector<int>& J, int size_cap) {
    if (J.empty()) throw std::invalid_argument("direct_sum: restriction set is empty");
    std::vector<int> sorted = J;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("direct_sum: repeated labels in restriction set");
    RepRealization rep;
    rep.d = d;
    rep.su = su_basis(d);
    rep.dim = 0;
    for (int j : sorted) {
        rep.offsets.push_back(rep.dim);
        rep.blocks.push_back(build_block(d, j, size_cap));
        rep.dim += rep.blocks.back().dim;
    }
    return rep;
}

namespace {

void enumerate_occupations(int d, int N, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == d - 1) {
        cur.push_back(N);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int n = N; n >= 0; --n) {
        cur.push_back(n);
        enumerate_occupations(d, N - n, cur, out);
        cur.pop_back();
    }
}

MatrixXcd dgamma(const std::vector<std::vector<int>>& occ,
                 const std::map<std::vector<int>, int>& index,
                 const MatrixXcd& K) {
    const int M = static_cast<int>(occ.size());
    const int d = static_cast<int>(K.rows());
    MatrixXcd L = MatrixXcd::Zero(M, M);
    for (int i = 0; i < M; ++i) {
        const std::vector<int>& n = occ[i];
        for (int q = 0; q < d; ++q) {
            if (n[q] == 0) continue;
            for (int p = 0; p < d; ++p) {
                if (K(p, q) == cxd(0, 0)) continue;
                if (p == q) {
                    L(i, i) += K(q, q) * static_cast<double>(n[q]);
                } else {
                    std::vector<int> m = n;
                    --m[q];
                    ++m[p];
                    const int t = index.at(m);
                    L(t, i) += K(p, q) *
                               std::sqrt(static_cast<double>(n[q]) * (n[p] + 1));
                }
            }
        }
    }
    return L;
}

}  // namespace

MatrixXcd SymTensorRep::sym_power(const MatrixXcd& U) const {
    // log U without trace removal: the overall phase matters here.
    Eigen::ComplexEigenSolver<MatrixXcd> es(U);
    VectorXcd logs(es.eigenvalues().size());
    for (int i = 0; i < logs.size(); ++i)
        logs(i) = cxd(0, std::arg(es.eigenvalues()(i)));
    MatrixXcd K = es.eigenvectors() * logs.asDiagonal() * es.eigenvectors().inverse();
    K = 0.5 * (K - K.adjoint().eval());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < M; ++i) index[occupations[i]] = i;
    return exp_antihermitian(dgamma(occupations, index, K));
}

VectorXd SymTensorRep::real_coords(const MatrixXcd& herm) const {
    VectorXd x(herm_basis.size());
    for (size_t a = 0; a < herm_basis.size(); ++a)
        x(a) = (herm_basis[a] * herm).trace().real();
    return x;
}

MatrixXcd SymTensorRep::from_real_coords(const VectorXd& x) const {
    MatrixXcd H = MatrixXcd::Zero(M, M);
    for (size_t a = 0; a < herm_basis.size(); ++a) H += x(a) * herm_basis[a];
    return H;
}

SymTensorRep symtensor_generators(int d, int N, int size_cap) {
    SymTensorRep rep;
    rep.d = d;
    rep.N = N;
    std::vector<int> cur;
    enumerate_occupations(d, N, cur, rep.occupations);
    rep.M = static_cast<int>(rep.occupations.size());
    if (rep.M * rep.M > size_cap)
        throw std::runtime_error("symtensor_generators: ambient dimension " +
                                 std::to_string(rep.M * rep.M) + " exceeds cap " +
                                 std::to_string(size_cap));
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < rep.M; ++i) index[rep.occupations[i]] = i;
    for (const MatrixXcd& K : su_basis(d))
        rep.lift.push_back(dgamma(rep.occupations, index, K));

    const int M = rep.M;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < M; ++i) {
        MatrixXcd E = MatrixXcd::Zero(M, M);
        E(i, i) = 1;
        rep.herm_basis.push_back(E);
    }
    for (int i = 0; i < M; ++i) {
        for (int k = i + 1; k < M; ++k) {
            MatrixXcd S = MatrixXcd::Zero(M, M);
            S(i, k) = inv_sqrt2;
            S(k, i) = inv_sqrt2;
            rep.herm_basis.push_back(S);
            MatrixXcd A = MatrixXcd::Zero(M, M);
            A(i, k) = cxd(0, inv_sqrt2);
            A(k, i) = cxd(0, -inv_sqrt2);
            rep.herm_basis.push_back(A);
        }
    }

    // Pair layout mirroring the herm_basis construction above.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < M; ++i)
        for (int k = i + 1; k < M; ++k) pairs.emplace_back(i, k);

    const int n2 = M * M;
    for (const MatrixXcd& L : rep.lift) {
        MatrixXd a(n2, n2);
        for (int b = 0; b < n2; ++b) {
            MatrixXcd comm = L * rep.herm_basis[b] - rep.herm_basis[b] * L;
            // tr(H_al comm) read off entrywise instead of by full products.
            for (int i = 0; i < M; ++i) a(i, b) = comm(i, i).real();
            for (size_t p = 0; p < pairs.size(); ++p) {
                auto [i, k] = pairs[p];
                cxd s = inv_sqrt2 * (comm(k, i) + comm(i, k));
                cxd t = cxd(0, inv_sqrt2) * (comm(k, i) - comm(i, k));
                a(M + 2 * static_cast<int>(p), b) = s.real();
                a(M + 2 * static_cast<int>(p) + 1, b) = t.real();
            }
        }
        rep.adj.push_back(std::move(a));
    }
    return rep;
}

std::vector<CasimirBlock> casimir_blocks(const SymTensorRep& rep, double tol) {
    const int n2 = rep.M * rep.M;
    MatrixXd C = MatrixXd::Zero(n2, n2);
    for (const MatrixXd& a : rep.adj) C -= a * a;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(C);
    const VectorXd& ev = es.eigenvalues();  // ascending
    std::vector<CasimirBlock> out;
    for (auto [b, e] : cluster_eigenvalues(ev, tol)) {
        CasimirBlock blk;
        blk.dim = e - b;
        blk.eigenvalue = ev.segment(b, e - b).mean();
        blk.basis = es.eigenvectors().middleCols(b, e - b);
        out.push_back(std::move(blk));
    }
    return out;
}

std::vector<VectorXd> cartan_weights(const IrrepBlock& blk) {
    const int d = blk.d;
    std::vector<MatrixXcd> cartan;
    if (d == 2) {
        MatrixXcd H = MatrixXcd::Zero(2, 2);
        H(0, 0) = cxd(0, 0.5);
        H(1, 1) = cxd(0, -0.5);
        cartan.push_back(H);
    } else if (d == 3) {
        MatrixXcd H1 = MatrixXcd::Zero(3, 3);
        H1(0, 0) = cxd(0, 0.5);
        H1(1, 1) = cxd(0, -0.5);
        MatrixXcd H2 = MatrixXcd::Zero(3, 3);
        const double s = 1.0 / (2.0 * std::sqrt(3.0));
        H2(0, 0) = cxd(0, s);
        H2(1, 1) = cxd(0, s);
        H2(2, 2) = cxd(0, -2 * s);
        cartan = {H1, H2};
    } else {
        throw std::invalid_argument("cartan_weights: implemented for d in {2, 3}");
    }
    const auto su = su_basis(d);

    struct Slice {
        MatrixXcd basis;
        VectorXd weight;
    };
    std::vector<Slice> slices{{MatrixXcd::Identity(blk.dim, blk.dim), VectorXd()}};
    for (size_t h = 0; h < cartan.size(); ++h) {
        MatrixXd A = blk.algebra_element(su_coefficients(cartan[h], su));
        std::vector<Slice> next;
        for (const Slice& sl : slices) {
            // The generator images are real antisymmetric, so -i times the
            // restriction is Hermitian.
            MatrixXcd M =
                cxd(0, -1) * (sl.basis.adjoint() * (A.cast<cxd>() * sl.basis));
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(M);
            for (auto [b, e] : cluster_eigenvalues(es.eigenvalues(), 1e-8)) {
                Slice child;
                child.basis = sl.basis * es.eigenvectors().middleCols(b, e - b);
                child.weight = VectorXd(h + 1);
                child.weight.head(h) = sl.weight;
                child.weight(h) = es.eigenvalues().segment(b, e - b).mean();
                next.push_back(std::move(child));
            }
        }
        slices = std::move(next);
    }
    std::vector<VectorXd> weights;
    for (const Slice& sl : slices)
        for (int c = 0; c < sl.basis.cols(); ++c) weights.push_back(sl.weight);
    return weights;
}

}  // namespace gptlab
