#pragma once

#include <Eigen/SparseCore>

#include "shapeopt/fea/model.hpp"

namespace shapeopt::fea {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Global stiffness K (6n x 6n). Element blocks are summed in element order.
SparseMatrix assemble_global(const StructuralModel& model);

}  // namespace shapeopt::fea
