#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <utility>

#include <Eigen/Core>

namespace shapeopt {

/// Objective value, gradient and the structure's highest point at one design.
struct Evaluation {
    double value{0.0};
    Eigen::VectorXd gradient;
    double max_z{std::numeric_limits<double>::quiet_NaN()};
};

/// Smooth objective over a design vector. Implementations must be safe to
/// call concurrently from several threads (the finite-difference oracle does).
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::size_t dimension() const = 0;
    virtual double value(const Eigen::VectorXd& x) const = 0;
    /// Objective in the most accurate arithmetic the problem offers.
    virtual long double precise_value(const Eigen::VectorXd& x) const { return value(x); }
    virtual Evaluation evaluate(const Eigen::VectorXd& x) const = 0;
};

/// Problem built from plain callables; handy for analytic test objectives.
class FunctionProblem final : public Problem {
public:
    using ValueFn = std::function<double(const Eigen::VectorXd&)>;
    using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    FunctionProblem(std::size_t dimension, ValueFn value, GradientFn gradient)
        : dimension_(dimension), value_(std::move(value)), gradient_(std::move(gradient)) {}

    std::size_t dimension() const override { return dimension_; }
    double value(const Eigen::VectorXd& x) const override { return value_(x); }
    Evaluation evaluate(const Eigen::VectorXd& x) const override {
        Evaluation e;
        e.value = value_(x);
        e.gradient = gradient_(x);
        return e;
    }

private:
    std::size_t dimension_;
    ValueFn value_;
    GradientFn gradient_;
};

}  // namespace shapeopt
