#include "shapeopt/fea/assembly.hpp"

#include <vector>

#include "shapeopt/fea/beam_column_kernel.hpp"

namespace shapeopt::fea {

SparseMatrix assemble_global(const StructuralModel& model) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(model.element_count() * 144);
    for (std::size_t e = 0; e < model.element_count(); ++e) {
        const auto k = kernel::global_stiffness(model.elements()[e].section, model.element_coords(e));
        const auto [ni, nj] = model.element_nodes(e);
        const Eigen::Index base[2] = {static_cast<Eigen::Index>(ni) * kDofsPerNode,
                                      static_cast<Eigen::Index>(nj) * kDofsPerNode};
        for (int r = 0; r < 12; ++r) {
            const Eigen::Index gr = base[r / 6] + r % 6;
            for (int c = 0; c < 12; ++c) {
                const Eigen::Index gc = base[c / 6] + c % 6;
                triplets.emplace_back(gr, gc, k[r][c]);
            }
        }
    }
    SparseMatrix K(model.dof_count(), model.dof_count());
    K.setFromTriplets(triplets.begin(), triplets.end());
    return K;
}

}  // namespace shapeopt::fea
