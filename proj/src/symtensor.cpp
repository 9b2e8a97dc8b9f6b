#include "gptlab/symtensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "gptlab/partitions.hpp"

namespace gptlab {

SymTensorState omega_N(const PureRay& psi, int N, int size_cap) {
    const int d = static_cast<int>(psi.amplitudes.size());
    SymTensorRep rep = symtensor_generators(d, N, size_cap);
    // Sym^N |psi> in the occupation basis: amplitude sqrt(N!/prod n_i!)
    // prod psi_i^{n_i}.
    VectorXcd v(rep.M);
    for (int i = 0; i < rep.M; ++i) {
        const auto& n = rep.occupations[i];
        double multinomial = 1.0;
        int placed = 0;
        for (int p = 0; p < d; ++p) {
            for (int k = 1; k <= n[p]; ++k) {
                ++placed;
                multinomial *= static_cast<double>(placed) / k;
            }
        }
        cxd amp = std::sqrt(multinomial);
        for (int p = 0; p < d; ++p)
            for (int k = 0; k < n[p]; ++k) amp *= psi.amplitudes(p);
        v(i) = amp;
    }
    return SymTensorState{N, v * v.adjoint()};
}

std::vector<BlockInfo> block_decomposition(int d, int N, int size_cap) {
    SymTensorRep rep = symtensor_generators(d, N, size_cap);
    auto clusters = casimir_blocks(rep);
    if (static_cast<int>(clusters.size()) != N + 1)
        throw std::runtime_error(
            "block_decomposition: expected " + std::to_string(N + 1) +
            " Casimir clusters, found " + std::to_string(clusters.size()) +
            " (eigenvalue clustering ambiguity)");
    std::vector<BlockInfo> out;
    std::int64_t accounted = 0;
    for (int j = 0; j <= N; ++j) {
        BlockInfo info;
        info.j = j;
        info.dim = dimension_formula(d, j);
        if (clusters[j].dim % info.dim != 0)
            throw std::runtime_error("block_decomposition: cluster of size " +
                                     std::to_string(clusters[j].dim) +
                                     " is not a multiple of D_j");
        info.multiplicity = static_cast<int>(clusters[j].dim / info.dim);
        accounted += static_cast<std::int64_t>(clusters[j].dim);
        out.push_back(info);
    }
    if (accounted != static_cast<std::int64_t>(rep.M) * rep.M)
        throw std::runtime_error("block_decomposition: dimensions do not sum up");
    return out;
}

namespace {

// Orthogonal intertwiner R with R G_theory = G_cluster R (unique up to sign
// for a real-type irreducible block).
MatrixXd block_intertwiner(const std::vector<MatrixXd>& gen_theory,
                           const std::vector<MatrixXd>& gen_cluster) {
    const int dim = static_cast<int>(gen_theory.front().rows());
    MatrixXd stacked(static_cast<int>(gen_theory.size()) * dim * dim, dim * dim);
    const MatrixXd eye = MatrixXd::Identity(dim, dim);
    for (size_t a = 0; a < gen_theory.size(); ++a) {
        stacked.middleRows(a * dim * dim, dim * dim) =
            Eigen::kroneckerProduct(eye, gen_cluster[a]) -
            Eigen::kroneckerProduct(gen_theory[a].transpose(), eye);
    }
    MatrixXd ker = null_space_real(stacked, 1e-8);
    if (ker.cols() != 1)
        throw std::runtime_error("effect lift: intertwiner space has dimension " +
                                 std::to_string(ker.cols()) + " (expected 1)");
    MatrixXd R = Eigen::Map<MatrixXd>(ker.col(0).data(), dim, dim);
    R /= std::sqrt((R.transpose() * R).trace() / dim);
    return R;
}

}  // namespace

CrosscheckResult crosscheck_probability(const Theory& theory, const PureRay& psi,
                                        const Effect& effect, int N) {
    const int d = theory.spec.d;
    if (N < 0) N = *std::max_element(theory.spec.J.begin(), theory.spec.J.end());
    if (N < *std::max_element(theory.spec.J.begin(), theory.spec.J.end()))
        throw std::invalid_argument("crosscheck_probability: N < max J");

    SymTensorRep rep = symtensor_generators(d, N);
    auto clusters = casimir_blocks(rep);
    if (static_cast<int>(clusters.size()) != N + 1)
        throw std::runtime_error("crosscheck_probability: clustering ambiguity");

    // Reference tensor state, used to calibrate the block scale factors.
    VectorXd x_ref = rep.real_coords(omega_N(PureRay::basis(d, 0), N).matrix);

    // Lifted effect in the real coordinates of Herm(Sym^N): offset c on the
    // trivial block, e on the J blocks through the Schur intertwiners.
    VectorXd y = VectorXd::Zero(rep.M * rep.M);
    const VectorXd t0 = clusters[0].basis.col(0);  // spans R * real_coords(I)
    y += effect.c / t0.dot(x_ref) * t0;
    for (size_t bidx = 0; bidx < theory.rep.blocks.size(); ++bidx) {
        const IrrepBlock& blk = theory.rep.blocks[bidx];
        const CasimirBlock& cl = clusters[blk.j];
        if (cl.dim != blk.dim)
            throw std::runtime_error(
                "crosscheck_probability: repeated or mismatched block for j=" +
                std::to_string(blk.j));
        std::vector<MatrixXd> gen_cluster;
        for (const MatrixXd& a : rep.adj)
            gen_cluster.push_back(cl.basis.transpose() * a * cl.basis);
        MatrixXd R = block_intertwiner(blk.gen, gen_cluster);
        VectorXd ref_mapped = R * blk.ref;  // unit vector
        double alpha = ref_mapped.dot(cl.basis.transpose() * x_ref);
        if (std::abs(alpha) < 1e-12)
            throw std::runtime_error("crosscheck_probability: degenerate scale");
        VectorXd e_j = effect.e.segment(theory.rep.offsets[bidx], blk.dim);
        y += cl.basis * (R * e_j) / alpha;
    }

    CrosscheckResult out;
    out.N = N;
    out.lifted.matrix = rep.from_real_coords(y);
    SymTensorState st = omega_N(psi, N);
    out.p_tensor = (out.lifted.matrix * st.matrix).trace().real();
    out.p_affine = evaluate(effect, theory.omega(psi));
    return out;
}

}  // namespace gptlab
