#include "gptlab/simplex.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace gptlab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

LpResult lp_feasible(const LpProblem& lp, double tol, const VectorXd* l1_weights) {
    const int n = lp.nvars;
    const int me = static_cast<int>(lp.Aeq.rows());
    const int mu = static_cast<int>(lp.Aub.rows());
    const int m = me + mu;
    if ((me && lp.Aeq.cols() != n) || (mu && lp.Aub.cols() != n))
        throw std::invalid_argument("lp_feasible: column count mismatch");
    if (l1_weights && l1_weights->size() != n)
        throw std::invalid_argument("lp_feasible: weight size mismatch");

    // Variables: x+ (n), x- (n), slacks (mu), artificials (m). Constraint
    // matrices are stored transposed (variables x constraints) so pivot
    // updates touch contiguous memory.
    const int nx = 2 * n, ns = mu, total = nx + ns + m;
    MatrixXd T0 = MatrixXd::Zero(total, m);
    VectorXd b0(m);
    if (me) {
        T0.block(0, 0, n, me) = lp.Aeq.transpose();
        T0.block(n, 0, n, me) = -lp.Aeq.transpose();
        b0.head(me) = lp.beq;
    }
    if (mu) {
        T0.block(0, me, n, mu) = lp.Aub.transpose();
        T0.block(n, me, n, mu) = -lp.Aub.transpose();
        T0.block(nx, me, mu, mu) = MatrixXd::Identity(mu, mu);
        b0.tail(mu) = lp.bub;
    }
    for (int i = 0; i < m; ++i) {
        if (b0(i) < 0) {
            T0.col(i) = -T0.col(i);
            b0(i) = -b0(i);
        }
        T0(nx + ns + i, i) = 1.0;
    }

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = nx + ns + i;

    MatrixXd T;
    VectorXd b, red;
    MatrixXd B(m, m);
    VectorXd cB(m);

    auto refactor = [&](const VectorXd& cost) {
        for (int r = 0; r < m; ++r) {
            B.col(r) = T0.row(basis[r]).transpose();
            cB(r) = cost(basis[r]);
        }
        Eigen::PartialPivLU<MatrixXd> lu(B);
        T = lu.solve(T0.transpose()).transpose();
        b = lu.solve(b0);
        VectorXd y = B.transpose().lu().solve(cB);
        red = T0 * y - cost;
    };

    // Pivot until no entering column (true) or the iteration budget runs out
    // (false). `last_col` excludes columns from entering (artificials in
    // phase 2); bland switches the pricing rule.
    auto pivot_loop = [&](long cap, int allowed, bool bland) {
        for (long it = 0; it < cap; ++it) {
            int enter = -1;
            if (!bland) {
                double best_red = tol;
                for (int c = 0; c < allowed; ++c) {
                    if (red(c) > best_red) {
                        best_red = red(c);
                        enter = c;
                    }
                }
            } else {
                for (int c = 0; c < allowed; ++c) {
                    if (red(c) > tol) {
                        enter = c;
                        break;
                    }
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = 0;
            for (int r = 0; r < m; ++r) {
                if (T(enter, r) > 1e-9) {
                    double ratio = b(r) / T(enter, r);
                    if (leave < 0 || ratio < best - 1e-9) {
                        leave = r;
                        best = ratio;
                    } else if (ratio < best + 1e-9) {
                        bool better = bland ? basis[r] < basis[leave]
                                            : T(enter, r) > T(enter, leave);
                        if (better) {
                            leave = r;
                            best = ratio;
                        }
                    }
                }
            }
            if (leave < 0) return true;  // unbounded direction; audit decides
            const double piv = T(enter, leave);
            T.col(leave) /= piv;
            b(leave) /= piv;
            VectorXd pivot_col = T.col(leave);  // copy: T mutates below
            const double bl = b(leave);
            for (int r = 0; r < m; ++r) {
                if (r == leave) continue;
                const double f = T(enter, r);
                if (f != 0.0) {
                    T.col(r).noalias() -= f * pivot_col;
                    b(r) -= f * bl;
                }
            }
            red.noalias() -= red(enter) * pivot_col;
            basis[leave] = enter;
        }
        return false;
    };

    // Phase 1: drive the artificial sum to zero.
    VectorXd cost1 = VectorXd::Zero(total);
    cost1.tail(m).setOnes();
    const long inner_cap = 4L * (m + total);
    const int max_passes = 30;
    bool optimal = false;
    for (int pass = 0; pass < max_passes && !optimal; ++pass) {
        refactor(cost1);
        optimal = pivot_loop(inner_cap, total, pass >= max_passes / 2);
    }

    auto audit = [&](double& obj_out) {
        for (int r = 0; r < m; ++r) {
            B.col(r) = T0.row(basis[r]).transpose();
            cB(r) = cost1(basis[r]);
        }
        Eigen::PartialPivLU<MatrixXd> lu(B);
        VectorXd xB = lu.solve(b0);
        double residual = (B * xB - b0).cwiseAbs().maxCoeff();
        double obj = 0, min_xB = 0;
        for (int r = 0; r < m; ++r) {
            min_xB = std::min(min_xB, xB(r));
            if (basis[r] >= nx + ns) obj += std::max(0.0, xB(r));
        }
        obj_out = obj;
        if (residual > 1e-6 || min_xB < -1e-6) return std::optional<VectorXd>();
        return std::optional<VectorXd>(std::move(xB));
    };

    LpResult out;
    double obj = 0;
    auto xB = audit(obj);
    out.phase1_objective = obj;
    if (!xB || !optimal) {
        out.status = LpResult::Status::stalled;
        return out;
    }
    if (obj > tol) {
        // An infeasibility claim needs a clean dual (optimality) certificate.
        VectorXd y = B.transpose().lu().solve(cB);
        VectorXd red_audit = T0 * y - cost1;
        if (red_audit.maxCoeff() > 10 * tol) {
            out.status = LpResult::Status::stalled;
            return out;
        }
        out.status = LpResult::Status::infeasible;
        return out;
    }

    // Phase 2 (optional): minimize sum_i w_i |x_i| over the feasible set.
    // Artificials are barred from re-entering; stopping early is harmless
    // since any feasible point is acceptable.
    if (l1_weights) {
        const std::vector<int> saved_basis = basis;
        VectorXd cost2 = VectorXd::Zero(total);
        cost2.head(n) = *l1_weights;
        cost2.segment(n, n) = *l1_weights;
        bool done = false;
        for (int pass = 0; pass < 10 && !done; ++pass) {
            refactor(cost2);
            done = pivot_loop(inner_cap, nx + ns, pass >= 5);
        }
        double obj2 = 0;
        auto xB2 = audit(obj2);
        if (xB2 && obj2 <= tol) {
            xB = xB2;  // keep the regularized point
        } else {
            basis = saved_basis;  // fall back to the phase-1 point
            xB = audit(obj2);
        }
    }

    VectorXd z = VectorXd::Zero(total);
    for (int r = 0; r < m; ++r) z(basis[r]) = std::max(0.0, (*xB)(r));
    out.x = z.head(n) - z.segment(n, n);
    out.status = LpResult::Status::feasible;
    return out;
}

}  // namespace gptlab
