#include "shapeopt/fea/beam_column.hpp"

#include "shapeopt/fea/beam_column_kernel.hpp"

namespace shapeopt::fea {

double element_length(const ElementCoords& coords) { return kernel::element_length(coords); }

Matrix12d local_stiffness(const BeamColumn& element, const ElementCoords& coords) {
    const auto k = kernel::local_stiffness(element.section, kernel::element_length(coords));
    Matrix12d out;
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c) out(r, c) = k[r][c];
    return out;
}

Eigen::Matrix3d rotation_matrix(const ElementCoords& coords) {
    const auto r = kernel::rotation(coords);
    Eigen::Matrix3d out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = r[i][j];
    return out;
}

Matrix12d transformation_matrix(const ElementCoords& coords) {
    const Eigen::Matrix3d r = rotation_matrix(coords);
    Matrix12d t = Matrix12d::Zero();
    for (int b = 0; b < 4; ++b) t.block<3, 3>(3 * b, 3 * b) = r;
    return t;
}

Matrix12d transform_to_global(const BeamColumn& element, const ElementCoords& coords) {
    const auto k = kernel::global_stiffness(element.section, coords);
    Matrix12d out;
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c) out(r, c) = k[r][c];
    return out;
}

}  // namespace shapeopt::fea
