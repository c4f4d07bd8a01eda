#include "shapeopt/sensitivity/element_jacobian.hpp"

#include "shapeopt/autodiff/jet.hpp"
#include "shapeopt/fea/beam_column_kernel.hpp"

namespace shapeopt::sens {

namespace {

using J6 = ad::Jet<6>;

fea::kernel::Mat12<J6> seeded_global_stiffness(const fea::BeamColumn& element, const fea::ElementCoords& coords) {
    std::array<J6, 6> xe;
    for (std::size_t s = 0; s < 6; ++s) xe[s] = J6::variable(coords[s], s);
    return fea::kernel::global_stiffness(element.section, xe);
}

}  // namespace

ElementJacobian element_stiffness_jacobian(const fea::BeamColumn& element, const fea::ElementCoords& coords) {
    const auto k = seeded_global_stiffness(element, coords);
    ElementJacobian out;
    for (std::size_t s = 0; s < 6; ++s) {
        for (int r = 0; r < 12; ++r)
            for (int c = 0; c < 12; ++c) out.slices[s](r, c) = k[r][c].tangent[s];
    }
    return out;
}

std::array<double, 6> element_compliance_sensitivity(const fea::BeamColumn& element,
                                                     const fea::ElementCoords& coords,
                                                     const std::array<double, 12>& ue) {
    const auto k = seeded_global_stiffness(element, coords);
    std::array<double, 6> out{};
    for (int r = 0; r < 12; ++r) {
        for (int c = 0; c < 12; ++c) {
            const double w = ue[r] * ue[c];
            for (std::size_t s = 0; s < 6; ++s) out[s] += w * k[r][c].tangent[s];
        }
    }
    for (auto& g : out) g *= -0.5;
    return out;
}

}  // namespace shapeopt::sens
