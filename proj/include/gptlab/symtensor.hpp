#pragma once

// Tensor-power picture: states as |psi><psi|^{(x)N} on Sym^N(C^d), effects as
// Hermitian matrices. Serves as an independent oracle for the affine
// effect/state machinery via crosscheck_probability.

#include <cstdint>
#include <vector>

#include "gptlab/effects.hpp"

namespace gptlab {

struct SymTensorState {
    int N = 0;
    MatrixXcd matrix;  // Hermitian, PSD, trace 1
};

struct SymTensorEffect {
    MatrixXcd matrix;  // Hermitian, not necessarily PSD
};

SymTensorState omega_N(const PureRay& psi, int N, int size_cap = kDefaultSizeCap);

struct BlockInfo {
    int j = 0;
    int multiplicity = 0;
    std::int64_t dim = 0;  // D_j^d
};

// Irrep content of Herm(Sym^N(C^d)) from the Casimir spectrum; the j's run
// 0..N and the dimensions account for the full binom(d+N-1, N)^2.
std::vector<BlockInfo> block_decomposition(int d, int N,
                                           int size_cap = kDefaultSizeCap);

struct CrosscheckResult {
    double p_affine = 0;
    double p_tensor = 0;
    SymTensorEffect lifted;
    int N = 0;
};

// Lifts the affine effect (e, c) to a Hermitian matrix on Sym^N (support on
// the J blocks, offset on the trivial block) and evaluates the outcome
// probability both ways.
CrosscheckResult crosscheck_probability(const Theory& theory, const PureRay& psi,
                                        const Effect& effect, int N = -1);

}  // namespace gptlab
