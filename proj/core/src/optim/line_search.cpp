#include "shapeopt/optim/line_search.hpp"

#include <cmath>
#include <string>

namespace shapeopt::optim {

LineSearchResult backtracking_search(const Problem& problem, const Eigen::VectorXd& x, double fx,
                                     const Eigen::VectorXd& gradient, const Eigen::VectorXd& d,
                                     const LineSearchParams& params) {
    params.validate();
    const double slope = gradient.dot(d);
    if (!(slope < 0.0)) {
        throw LineSearchError("search direction is not a descent direction (grad^T d = " + std::to_string(slope) + ")");
    }
    double alpha = params.initial_step;
    for (int i = 0; i <= params.max_shrinks; ++i) {
        double trial = 0.0;
        bool evaluated = true;
        try {
            trial = problem.value(x + alpha * d);
        } catch (const SingularMatrixError&) {
            evaluated = false;  // overshoot into a mechanism: treat like a failed Armijo test
        }
        if (evaluated && std::isfinite(trial) && trial <= fx + params.armijo * alpha * slope) {
            return {alpha, trial, i};
        }
        alpha *= params.shrink;
    }
    throw LineSearchError("no step satisfied the Armijo condition after " + std::to_string(params.max_shrinks) +
                          " reductions; the gradient may be inconsistent with the objective");
}

}  // namespace shapeopt::optim
