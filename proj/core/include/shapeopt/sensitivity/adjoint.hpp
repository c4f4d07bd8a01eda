#pragma once

#include <Eigen/Core>

#include "shapeopt/fea/model.hpp"
#include "shapeopt/fea/solver.hpp"
#include "shapeopt/parallel.hpp"
#include "shapeopt/param/design_map.hpp"

namespace shapeopt::sens {

/// dC/dx for every nodal coordinate, index 3 * node_index + axis. Elements are
/// processed by `workers` threads; their contributions are summed in element
/// order, so the result does not depend on the worker count.
Eigen::VectorXd nodal_coordinate_gradient(const fea::StructuralModel& model, const fea::SolveResult& solve,
                                          unsigned workers = default_workers());

/// dC/dx over the design variables of `map`. Throws StaleSolveError when
/// `solve` was computed for different coordinates than `model` has.
Eigen::VectorXd compliance_gradient_adjoint(const fea::StructuralModel& model, const fea::SolveResult& solve,
                                            const param::DesignMap& map, unsigned workers = default_workers());

/// Picks the Z entries of the mapped nodes out of a nodal coordinate gradient.
Eigen::VectorXd mapped_z_gradient(const fea::StructuralModel& model, const Eigen::VectorXd& nodal_gradient,
                                  const param::DesignMap& map);

}  // namespace shapeopt::sens
