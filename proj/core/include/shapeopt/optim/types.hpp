#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shapeopt/errors.hpp"

namespace shapeopt::optim {

/// Armijo backtracking: try alpha0 * shrink^i until
/// C(x + alpha d) <= C(x) + armijo * alpha * grad^T d.
struct LineSearchParams {
    double initial_step{1.0};
    double shrink{0.5};
    double armijo{1e-4};
    int max_shrinks{60};

    void validate() const;
    friend bool operator==(const LineSearchParams&, const LineSearchParams&) = default;
};

struct IterationRecord {
    int k{0};
    double compliance{0.0};             // kN m
    double grad_norm{0.0};              // Euclidean norm of the design gradient
    double max_z{0.0};                  // m
    double feasibility_violation{0.0};  // m
    double step_length{0.0};            // accepted alpha; 0 for the initial record
};

struct OptimConfig {
    int max_iterations{150};
    double tolerance{0.0};  // stop when |C_k - C_{k-1}| < tolerance
    double step{1e-3};      // fixed step t when line search is off
    bool line_search{true};
    LineSearchParams line_search_params{};

    /// Called once per record (initial state included) as soon as it is accepted.
    std::function<void(const IterationRecord&, const Eigen::VectorXd& x)> on_record;

    void validate() const;
};

/// Affine constraint a^T x <= b (inequality) or a^T x = b (equality).
struct LinearConstraint {
    Eigen::VectorXd a;
    double b{0.0};
};

/// Bounds plus general affine inequalities h(x) = a^T x - b <= 0 and
/// equalities g(x) = a^T x - b = 0.
struct ConstraintSet {
    Eigen::VectorXd lower;  // empty when there are no bounds
    Eigen::VectorXd upper;
    std::vector<LinearConstraint> inequalities;
    std::vector<LinearConstraint> equalities;

    static ConstraintSet box(Eigen::VectorXd lower, Eigen::VectorXd upper);
    static ConstraintSet box(std::size_t n, double lower, double upper);

    bool has_bounds() const { return lower.size() > 0; }
    bool empty() const { return !has_bounds() && inequalities.empty() && equalities.empty(); }

    /// Throws ValidationError on inconsistent sizes or lower > upper.
    void validate(std::size_t n) const;

    /// Largest violation max(0, h_j), |g_j| and bound excess at x.
    double violation(const Eigen::VectorXd& x) const;

    /// x clipped to the bounds (no-op without bounds).
    Eigen::VectorXd project(const Eigen::VectorXd& x) const;
};

enum class StopReason { Tolerance, MaxIterations, LineSearchStalled, Stationary };

std::string to_string(StopReason reason);

struct OptimResult {
    Eigen::VectorXd x;
    Eigen::VectorXd gradient;  // at x
    std::vector<IterationRecord> history;
    StopReason reason{StopReason::MaxIterations};
};

/// The objective could not be evaluated at an iterate (for example the
/// structure became singular). Carries the offending design and the history
/// accepted before it.
class IterateError : public Error {
public:
    IterateError(const std::string& what, Eigen::VectorXd x, std::vector<IterationRecord> history)
        : Error(what), x_(std::move(x)), history_(std::move(history)) {}

    const Eigen::VectorXd& x() const { return x_; }
    const std::vector<IterationRecord>& history() const { return history_; }

private:
    Eigen::VectorXd x_;
    std::vector<IterationRecord> history_;
};

}  // namespace shapeopt::optim
