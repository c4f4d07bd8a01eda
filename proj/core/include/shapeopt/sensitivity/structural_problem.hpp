#pragma once

#include <mutex>
#include <optional>

#include <Eigen/Core>

#include "shapeopt/fea/model.hpp"
#include "shapeopt/fea/solver.hpp"
#include "shapeopt/parallel.hpp"
#include "shapeopt/param/design_map.hpp"
#include "shapeopt/problem.hpp"

namespace shapeopt::sens {

/// Compliance of a frame as a function of its design vector:
/// map design -> assemble -> solve -> adjoint gradient -> chain rule.
class StructuralProblem final : public Problem {
public:
    StructuralProblem(fea::StructuralModel model, param::DesignMap map, unsigned workers = default_workers());

    std::size_t dimension() const override { return map_.size(); }
    double value(const Eigen::VectorXd& x) const override;
    /// Compliance from a long double assembly and solve (see fea::compliance_extended).
    long double precise_value(const Eigen::VectorXd& x) const override;
    Evaluation evaluate(const Eigen::VectorXd& x) const override;

    const fea::StructuralModel& base_model() const { return model_; }
    const param::DesignMap& design_map() const { return map_; }

    fea::StructuralModel model_at(const Eigen::VectorXd& x) const;

private:
    struct Cached {
        Eigen::VectorXd x;
        fea::StructuralModel model;
        fea::SolveResult solve;
    };
    Cached solve_at(const Eigen::VectorXd& x) const;

    fea::StructuralModel model_;
    param::DesignMap map_;
    unsigned workers_;
    mutable std::mutex cache_mutex_;
    mutable std::optional<Cached> cache_;
};

enum class Arithmetic { Double, Extended };

/// Central differences (C(x + h e_i) - C(x - h e_i)) / 2h for every design
/// variable; 2 n_d evaluations of the problem, spread over `workers` threads.
/// Extended arithmetic evaluates C through Problem::precise_value, which keeps
/// rounding noise well below the differences taken at h = 1e-6.
Eigen::VectorXd finite_difference_gradient(const Problem& problem, const Eigen::VectorXd& x, double h = 1e-6,
                                           unsigned workers = 1, Arithmetic arithmetic = Arithmetic::Double);

}  // namespace shapeopt::sens
