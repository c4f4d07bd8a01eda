#include "shapeopt/optim/types.hpp"

#include <algorithm>
#include <cmath>

namespace shapeopt::optim {

void LineSearchParams::validate() const {
    if (!(initial_step > 0.0)) throw ValidationError("line search initial step must be positive");
    if (!(shrink > 0.0 && shrink < 1.0)) throw ValidationError("line search shrink factor must lie in (0, 1)");
    if (!(armijo > 0.0 && armijo < 1.0)) throw ValidationError("Armijo constant must lie in (0, 1)");
    if (max_shrinks < 0) throw ValidationError("line search shrink limit must be non-negative");
}

void OptimConfig::validate() const {
    if (max_iterations < 1) throw ValidationError("max_iterations must be at least 1");
    if (!(tolerance >= 0.0)) throw ValidationError("compliance tolerance must be non-negative");
    if (line_search) {
        line_search_params.validate();
    } else if (!(step > 0.0) || !std::isfinite(step)) {
        throw ValidationError("fixed step size must be positive and finite");
    }
}

ConstraintSet ConstraintSet::box(Eigen::VectorXd lower, Eigen::VectorXd upper) {
    ConstraintSet c;
    c.lower = std::move(lower);
    c.upper = std::move(upper);
    return c;
}

ConstraintSet ConstraintSet::box(std::size_t n, double lower, double upper) {
    const auto size = static_cast<Eigen::Index>(n);
    return box(Eigen::VectorXd::Constant(size, lower), Eigen::VectorXd::Constant(size, upper));
}

void ConstraintSet::validate(std::size_t n) const {
    const auto size = static_cast<Eigen::Index>(n);
    if (lower.size() != upper.size()) throw ValidationError("lower and upper bounds differ in length");
    if (has_bounds()) {
        if (lower.size() != size) throw ValidationError("bounds do not match the number of design variables");
        for (Eigen::Index i = 0; i < size; ++i) {
            if (std::isnan(lower[i]) || std::isnan(upper[i])) throw ValidationError("bound is NaN");
            if (lower[i] > upper[i]) {
                throw ValidationError("lower bound exceeds upper bound for variable " + std::to_string(i));
            }
        }
    }
    for (const auto* group : {&inequalities, &equalities}) {
        for (const auto& c : *group) {
            if (c.a.size() != size) throw ValidationError("constraint gradient does not match the number of design variables");
            if (!c.a.allFinite() || !std::isfinite(c.b)) throw ValidationError("constraint coefficients must be finite");
        }
    }
}

double ConstraintSet::violation(const Eigen::VectorXd& x) const {
    double v = 0.0;
    if (has_bounds()) {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            v = std::max({v, lower[i] - x[i], x[i] - upper[i]});
        }
    }
    for (const auto& c : inequalities) v = std::max(v, c.a.dot(x) - c.b);
    for (const auto& c : equalities) v = std::max(v, std::abs(c.a.dot(x) - c.b));
    return v;
}

Eigen::VectorXd ConstraintSet::project(const Eigen::VectorXd& x) const {
    if (!has_bounds()) return x;
    return x.cwiseMax(lower).cwiseMin(upper);
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Tolerance: return "tolerance";
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::LineSearchStalled: return "line_search_stalled";
        case StopReason::Stationary: return "stationary";
    }
    return "unknown";
}

}  // namespace shapeopt::optim
