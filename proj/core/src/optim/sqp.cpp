#include "shapeopt/optim/sqp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shapeopt/optim/bfgs.hpp"
#include "shapeopt/optim/convergence.hpp"
#include "shapeopt/optim/qp.hpp"

namespace shapeopt::optim {

namespace {

// Sum of constraint violations; the l1 penalty term of the merit function.
double l1_violation(const ConstraintSet& cs, const Eigen::VectorXd& x) {
    double v = 0.0;
    if (cs.has_bounds()) {
        v += (cs.lower - x).cwiseMax(0.0).sum();
        v += (x - cs.upper).cwiseMax(0.0).sum();
    }
    for (const auto& c : cs.inequalities) v += std::max(0.0, c.a.dot(x) - c.b);
    for (const auto& c : cs.equalities) v += std::abs(c.a.dot(x) - c.b);
    return v;
}

QpProblem linearise(const ConstraintSet& cs, const Eigen::VectorXd& x, const Eigen::MatrixXd& B,
                    const Eigen::VectorXd& g) {
    const Eigen::Index n = x.size();
    QpProblem qp;
    qp.B = B;
    qp.g = g;
    qp.A_eq.resize(static_cast<Eigen::Index>(cs.equalities.size()), n);
    qp.b_eq.resize(qp.A_eq.rows());
    for (std::size_t i = 0; i < cs.equalities.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        qp.A_eq.row(r) = cs.equalities[i].a.transpose();
        qp.b_eq[r] = cs.equalities[i].b - cs.equalities[i].a.dot(x);
    }
    qp.A_in.resize(static_cast<Eigen::Index>(cs.inequalities.size()), n);
    qp.b_in.resize(qp.A_in.rows());
    for (std::size_t i = 0; i < cs.inequalities.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        qp.A_in.row(r) = cs.inequalities[i].a.transpose();
        qp.b_in[r] = cs.inequalities[i].b - cs.inequalities[i].a.dot(x);
    }
    if (cs.has_bounds()) {
        qp.lower = cs.lower - x;
        qp.upper = cs.upper - x;
    }
    return qp;
}

double largest_multiplier(const QpSolution& sol) {
    double m = 0.0;
    for (const auto* v : {&sol.mu, &sol.lambda, &sol.lambda_lower, &sol.lambda_upper}) {
        if (v->size() > 0) m = std::max(m, v->lpNorm<Eigen::Infinity>());
    }
    return m;
}

}  // namespace

OptimResult sqp_run(const Problem& problem, const ConstraintSet& constraints, const Eigen::VectorXd& x0,
                    const OptimConfig& config) {
    config.validate();
    const std::size_t n = problem.dimension();
    if (static_cast<std::size_t>(x0.size()) != n) {
        throw ValidationError("initial design has " + std::to_string(x0.size()) + " entries, problem expects " +
                              std::to_string(n));
    }
    constraints.validate(n);
    const LineSearchParams& ls = config.line_search_params;

    OptimResult result;
    result.x = constraints.project(x0);
    Evaluation current;
    try {
        current = problem.evaluate(result.x);
    } catch (const Error& err) {
        throw IterateError(std::string("initial design could not be analysed: ") + err.what(), result.x, {});
    }

    const auto push = [&](int k, const Evaluation& e, double step) {
        IterationRecord rec{k, e.value, e.gradient.norm(), e.max_z, constraints.violation(result.x), step};
        result.history.push_back(rec);
        if (config.on_record) config.on_record(rec, result.x);
    };
    push(0, current, 0.0);

    const double g0 = current.gradient.lpNorm<Eigen::Infinity>();
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) *
                        (g0 > 0.0 ? g0 : 1.0);
    double penalty = 0.0;

    result.reason = StopReason::MaxIterations;
    for (int k = 1; k <= config.max_iterations; ++k) {
        const QpSolution sol = solve_qp_subproblem(linearise(constraints, result.x, B, current.gradient));
        const Eigen::VectorXd& d = sol.d;
        if (d.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + result.x.lpNorm<Eigen::Infinity>())) {
            result.reason = StopReason::Stationary;
            break;
        }

        // l1 merit phi = C + penalty * violation; the penalty must exceed every multiplier.
        penalty = std::max(1.1 * largest_multiplier(sol), 0.5 * (penalty + largest_multiplier(sol)));
        const double viol = l1_violation(constraints, result.x);
        const double merit = current.value + penalty * viol;
        const double slope = current.gradient.dot(d) - penalty * viol;
        // A descent slope below rounding level of C means the QP step is pure noise.
        if (!(slope < -1e-12 * (1.0 + std::abs(current.value)))) {
            result.reason = StopReason::Stationary;
            break;
        }

        double alpha = 1.0;
        bool accepted = false;
        for (int i = 0; i <= ls.max_shrinks; ++i) {
            const Eigen::VectorXd trial_x = result.x + alpha * d;
            double trial = 0.0;
            bool evaluated = true;
            try {
                trial = problem.value(trial_x);
            } catch (const SingularMatrixError&) {
                evaluated = false;
            }
            if (evaluated && std::isfinite(trial) &&
                trial + penalty * l1_violation(constraints, trial_x) <= merit + ls.armijo * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= ls.shrink;
        }
        if (!accepted) {
            result.reason = StopReason::LineSearchStalled;
            break;
        }

        // The QP keeps affine constraints satisfied along the segment; projecting
        // only removes rounding at active bounds.
        const Eigen::VectorXd x_next = constraints.project(result.x + alpha * d);
        Evaluation next;
        try {
            next = problem.evaluate(x_next);
        } catch (const Error& err) {
            throw IterateError("iteration " + std::to_string(k) + " failed: " + err.what(), x_next, result.history);
        }

        // Constraint gradients are constant, so the Lagrangian gradient difference
        // at the new multipliers reduces to the objective gradient difference.
        const Eigen::VectorXd s = x_next - result.x;
        const Eigen::VectorXd y = next.gradient - current.gradient;
        B = bfgs_update(B, s, y).B;

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
