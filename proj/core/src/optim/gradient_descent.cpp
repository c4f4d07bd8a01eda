#include "shapeopt/optim/gradient_descent.hpp"

#include <cmath>
#include <string>

#include "shapeopt/optim/convergence.hpp"
#include "shapeopt/optim/line_search.hpp"

namespace shapeopt::optim {

OptimResult gradient_descent_run(const Problem& problem, const Eigen::VectorXd& x0, const OptimConfig& config) {
    config.validate();
    if (static_cast<std::size_t>(x0.size()) != problem.dimension()) {
        throw ValidationError("initial design has " + std::to_string(x0.size()) + " entries, problem expects " +
                              std::to_string(problem.dimension()));
    }

    OptimResult result;
    result.x = x0;
    Evaluation current;
    try {
        current = problem.evaluate(result.x);
    } catch (const Error& err) {
        throw IterateError(std::string("initial design could not be analysed: ") + err.what(), result.x, {});
    }

    const auto push = [&](int k, const Evaluation& e, double step) {
        IterationRecord rec{k, e.value, e.gradient.norm(), e.max_z, 0.0, step};
        result.history.push_back(rec);
        if (config.on_record) config.on_record(rec, result.x);
    };
    push(0, current, 0.0);

    int increases = 0;
    result.reason = StopReason::MaxIterations;
    for (int k = 1; k <= config.max_iterations; ++k) {
        if (current.gradient.squaredNorm() == 0.0) {
            result.reason = StopReason::Stationary;
            break;
        }
        const Eigen::VectorXd d = -current.gradient;
        double alpha = config.step;
        if (config.line_search) {
            try {
                alpha = backtracking_search(problem, result.x, current.value, current.gradient, d,
                                            config.line_search_params)
                            .alpha;
            } catch (const LineSearchError&) {
                // No decrease is representable any more: the run has converged as far as
                // double precision allows.
                result.reason = StopReason::LineSearchStalled;
                break;
            }
        }

        const Eigen::VectorXd x_next = result.x + alpha * d;
        Evaluation next;
        try {
            next = problem.evaluate(x_next);
        } catch (const Error& err) {
            // A fixed step that moves the design by many times its own size has left the
            // region where the structure is analysable; report that as divergence.
            const double moved = (x_next - result.x).lpNorm<Eigen::Infinity>();
            if (!config.line_search && moved > kRunawayFactor * (1.0 + result.x.lpNorm<Eigen::Infinity>())) {
                throw DivergenceError("fixed step " + std::to_string(config.step) + " moved the design by " +
                                      std::to_string(moved) + " m at iteration " + std::to_string(k) + " (" +
                                      err.what() + "); reduce the step size or enable line search");
            }
            throw IterateError("iteration " + std::to_string(k) + " failed: " + err.what(), x_next, result.history);
        }
        if (!std::isfinite(next.value)) {
            throw DivergenceError("compliance became non-finite at iteration " + std::to_string(k) +
                                  "; reduce the step size or enable line search");
        }
        if (!config.line_search) {
            increases = next.value > current.value ? increases + 1 : 0;
            if (increases >= kDivergenceWindow) {
                throw DivergenceError("compliance increased for " + std::to_string(kDivergenceWindow) +
                                      " consecutive iterations with fixed step " + std::to_string(config.step) +
                                      "; reduce the step size or enable line search");
            }
        }

        result.x = x_next;
        current = std::move(next);
        push(k, current, alpha);

        const Convergence c = check_convergence(result.history, config);
        if (c == Convergence::StopTolerance) {
            result.reason = StopReason::Tolerance;
            break;
        }
        if (c == Convergence::StopMaxIterations) {
            result.reason = StopReason::MaxIterations;
            break;
        }
    }
    result.gradient = current.gradient;
    return result;
}

}  // namespace shapeopt::optim
