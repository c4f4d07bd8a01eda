#pragma once

#include <Eigen/Core>

#include "shapeopt/optim/types.hpp"
#include "shapeopt/problem.hpp"

namespace shapeopt::optim {

/// Consecutive compliance increases under a fixed step that count as divergence.
inline constexpr int kDivergenceWindow = 10;

/// A fixed step whose failed analysis moved the design by more than this many
/// times (1 + |x|_inf) is reported as divergence rather than a failed iterate.
inline constexpr double kRunawayFactor = 10.0;

/// x_{k+1} = x_k - t_k grad C(x_k), with t_k fixed or found by backtracking.
OptimResult gradient_descent_run(const Problem& problem, const Eigen::VectorXd& x0, const OptimConfig& config);

}  // namespace shapeopt::optim
