#pragma once

#include <Eigen/Core>

#include "shapeopt/optim/types.hpp"
#include "shapeopt/problem.hpp"

namespace shapeopt::optim {

/// Sequential quadratic programming for affine constraints: QP subproblem on
/// a damped-BFGS model, l1 merit line search, B_0 = ||grad C(x0)||_inf I.
/// x0 is projected onto the bounds first.
OptimResult sqp_run(const Problem& problem, const ConstraintSet& constraints, const Eigen::VectorXd& x0,
                    const OptimConfig& config);

}  // namespace shapeopt::optim
