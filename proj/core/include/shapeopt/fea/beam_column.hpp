#pragma once

#include <Eigen/Core>

#include "shapeopt/fea/model.hpp"

namespace shapeopt::fea {

using Matrix12d = Eigen::Matrix<double, 12, 12>;

double element_length(const ElementCoords& coords);

/// 12x12 stiffness in the element's local axes.
Matrix12d local_stiffness(const BeamColumn& element, const ElementCoords& coords);

/// Direction cosines; row k is local axis k in global coordinates.
Eigen::Matrix3d rotation_matrix(const ElementCoords& coords);

/// Block-diagonal 12x12 transformation T, local = T * global.
Matrix12d transformation_matrix(const ElementCoords& coords);

/// Element stiffness in global axes, T^T k_local T.
Matrix12d transform_to_global(const BeamColumn& element, const ElementCoords& coords);

}  // namespace shapeopt::fea
