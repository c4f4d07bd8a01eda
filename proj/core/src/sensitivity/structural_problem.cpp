#include "shapeopt/sensitivity/structural_problem.hpp"

#include <string>
#include <vector>

#include "shapeopt/errors.hpp"
#include "shapeopt/sensitivity/adjoint.hpp"

namespace shapeopt::sens {

StructuralProblem::StructuralProblem(fea::StructuralModel model, param::DesignMap map, unsigned workers)
    : model_(std::move(model)), map_(std::move(map)), workers_(workers) {
    map_.validate(model_);
}

fea::StructuralModel StructuralProblem::model_at(const Eigen::VectorXd& x) const {
    return param::map_design_to_model(model_, map_, x);
}

StructuralProblem::Cached StructuralProblem::solve_at(const Eigen::VectorXd& x) const {
    {
        std::lock_guard lock(cache_mutex_);
        if (cache_ && cache_->x.size() == x.size() && cache_->x == x) return *cache_;
    }
    Cached c{x, model_at(x), {}};
    c.solve = fea::analyze(c.model);
    std::lock_guard lock(cache_mutex_);
    cache_ = c;
    return c;
}

double StructuralProblem::value(const Eigen::VectorXd& x) const { return solve_at(x).solve.compliance; }

long double StructuralProblem::precise_value(const Eigen::VectorXd& x) const {
    return fea::compliance_extended(model_at(x));
}

Evaluation StructuralProblem::evaluate(const Eigen::VectorXd& x) const {
    const Cached c = solve_at(x);
    Evaluation e;
    e.value = c.solve.compliance;
    e.gradient = compliance_gradient_adjoint(c.model, c.solve, map_, workers_);
    e.max_z = c.model.max_z();
    return e;
}

Eigen::VectorXd finite_difference_gradient(const Problem& problem, const Eigen::VectorXd& x, double h,
                                           unsigned workers, Arithmetic arithmetic) {
    if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive, got " + std::to_string(h));
    if (static_cast<std::size_t>(x.size()) != problem.dimension()) {
        throw ValidationError("finite_difference_gradient: design vector length does not match the problem");
    }
    Eigen::VectorXd g(x.size());
    parallel_for(
        static_cast<std::size_t>(x.size()),
        [&](std::size_t i) {
            const auto k = static_cast<Eigen::Index>(i);
            Eigen::VectorXd xp = x;
            Eigen::VectorXd xm = x;
            xp[k] += h;
            xm[k] -= h;
            if (arithmetic == Arithmetic::Extended) {
                // Divide by the step actually taken after rounding x +- h.
                const long double step = static_cast<long double>(xp[k]) - static_cast<long double>(xm[k]);
                g[k] = static_cast<double>((problem.precise_value(xp) - problem.precise_value(xm)) / step);
            } else {
                g[k] = (problem.value(xp) - problem.value(xm)) / (2.0 * h);
            }
        },
        workers);
    return g;
}

}  // namespace shapeopt::sens
