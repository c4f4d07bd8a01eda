#pragma once

#include <Eigen/Core>

namespace shapeopt::optim {

/// min g^T d + 1/2 d^T B d
/// s.t. A_eq d = b_eq, A_in d <= b_in, lower <= d <= upper.
/// Empty matrices / vectors mean "no such constraints".
struct QpProblem {
    Eigen::MatrixXd B;
    Eigen::VectorXd g;
    Eigen::MatrixXd A_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd A_in;
    Eigen::VectorXd b_in;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
};

/// Solution with multipliers such that
/// B d + g + A_eq^T mu + A_in^T lambda - lambda_lower + lambda_upper = 0.
struct QpSolution {
    Eigen::VectorXd d;
    Eigen::VectorXd mu;
    Eigen::VectorXd lambda;
    Eigen::VectorXd lambda_lower;
    Eigen::VectorXd lambda_upper;
    int iterations{0};
};

/// Dual active-set method (Goldfarb-Idnani). B must be symmetric positive
/// definite. Throws InfeasibleError when the constraints admit no point.
QpSolution solve_qp_subproblem(const QpProblem& qp);

}  // namespace shapeopt::optim
