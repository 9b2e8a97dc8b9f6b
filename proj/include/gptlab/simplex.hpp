#pragma once

// Dense two-phase simplex for small problems:
//   find x with Aeq x = beq, Aub x <= bub  (x free),
// optionally followed by minimizing an L1 cost sum_i w_i |x_i| over the
// feasible set (used to regularize effect vectors). Free variables are split
// into positive parts internally; the working tableau is periodically
// refactorized from pristine data and the final verdict is audited against
// it. Sizes here are at most a few hundred rows.

#include <Eigen/Dense>

namespace gptlab {

struct LpProblem {
    int nvars = 0;
    Eigen::MatrixXd Aeq;  // may have 0 rows
    Eigen::VectorXd beq;
    Eigen::MatrixXd Aub;
    Eigen::VectorXd bub;
};

struct LpResult {
    enum class Status { feasible, infeasible, stalled };
    Status status = Status::stalled;
    Eigen::VectorXd x;        // a feasible point when status == feasible
    double phase1_objective = 0;  // residual infeasibility otherwise
};

LpResult lp_feasible(const LpProblem& lp, double tol = 1e-8,
                     const Eigen::VectorXd* l1_weights = nullptr);

}  // namespace gptlab
