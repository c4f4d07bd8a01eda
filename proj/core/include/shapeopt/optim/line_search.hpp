#pragma once

#include <Eigen/Core>

#include "shapeopt/optim/types.hpp"
#include "shapeopt/problem.hpp"

namespace shapeopt::optim {

struct LineSearchResult {
    double alpha{0.0};
    double value{0.0};  // C(x + alpha d)
    int shrinks{0};
};

/// Largest alpha in {alpha0 * shrink^i, i <= max_shrinks} meeting the Armijo
/// condition. Throws LineSearchError for a non-descent direction or when every
/// trial fails.
LineSearchResult backtracking_search(const Problem& problem, const Eigen::VectorXd& x, double fx,
                                     const Eigen::VectorXd& gradient, const Eigen::VectorXd& d,
                                     const LineSearchParams& params);

}  // namespace shapeopt::optim
