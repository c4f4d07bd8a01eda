#pragma once

#include <array>

#include "shapeopt/fea/beam_column.hpp"
#include "shapeopt/fea/model.hpp"

namespace shapeopt::sens {

using fea::Matrix12d;

/// d k_global / d x_e for one element: slice s is the derivative with respect
/// to coordinate s of (x1, y1, z1, x2, y2, z2).
struct ElementJacobian {
    std::array<Matrix12d, 6> slices;

    const Matrix12d& operator[](std::size_t s) const { return slices[s]; }
};

/// Forward-mode derivative of the global-frame element stiffness, one width-6 pass.
ElementJacobian element_stiffness_jacobian(const fea::BeamColumn& element, const fea::ElementCoords& coords);

/// The element's six contractions -1/2 u_e^T (d k_e / d x_s) u_e, without
/// materialising the 12x12x6 block.
std::array<double, 6> element_compliance_sensitivity(const fea::BeamColumn& element,
                                                     const fea::ElementCoords& coords,
                                                     const std::array<double, 12>& ue);

}  // namespace shapeopt::sens
