#include "shapeopt/sensitivity/adjoint.hpp"

#include <string>
#include <vector>

#include "shapeopt/errors.hpp"
#include "shapeopt/sensitivity/element_jacobian.hpp"

namespace shapeopt::sens {

Eigen::VectorXd nodal_coordinate_gradient(const fea::StructuralModel& model, const fea::SolveResult& solve,
                                          unsigned workers) {
    if (solve.geometry_hash != model.geometry_hash()) {
        throw StaleSolveError("solve result does not belong to the current geometry; re-run the analysis first");
    }
    if (solve.displacements.size() != model.dof_count()) {
        throw ValidationError("solve result has " + std::to_string(solve.displacements.size()) +
                              " displacements, model has " + std::to_string(model.dof_count()) + " DOFs");
    }
    const std::size_t ne = model.element_count();
    std::vector<std::array<double, 6>> per_element(ne);
    parallel_for(
        ne,
        [&](std::size_t e) {
            const auto [ni, nj] = model.element_nodes(e);
            std::array<double, 12> ue;
            for (int k = 0; k < 6; ++k) {
                ue[k] = solve.displacements[static_cast<Eigen::Index>(ni) * fea::kDofsPerNode + k];
                ue[6 + k] = solve.displacements[static_cast<Eigen::Index>(nj) * fea::kDofsPerNode + k];
            }
            per_element[e] = element_compliance_sensitivity(model.elements()[e], model.element_coords(e), ue);
        },
        workers);

    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 * model.node_count()));
    for (std::size_t e = 0; e < ne; ++e) {
        const auto [ni, nj] = model.element_nodes(e);
        for (int a = 0; a < 3; ++a) {
            g[static_cast<Eigen::Index>(3 * ni) + a] += per_element[e][a];
            g[static_cast<Eigen::Index>(3 * nj) + a] += per_element[e][3 + a];
        }
    }
    return g;
}

Eigen::VectorXd mapped_z_gradient(const fea::StructuralModel& model, const Eigen::VectorXd& nodal_gradient,
                                  const param::DesignMap& map) {
    const auto ids = map.mapped_nodes();
    Eigen::VectorXd gz(static_cast<Eigen::Index>(ids.size()));
    for (std::size_t r = 0; r < ids.size(); ++r) {
        gz[static_cast<Eigen::Index>(r)] = nodal_gradient[static_cast<Eigen::Index>(3 * model.index_of(ids[r]) + 2)];
    }
    return gz;
}

Eigen::VectorXd compliance_gradient_adjoint(const fea::StructuralModel& model, const fea::SolveResult& solve,
                                            const param::DesignMap& map, unsigned workers) {
    const Eigen::VectorXd nodal = nodal_coordinate_gradient(model, solve, workers);
    const Eigen::VectorXd g = param::chain_rule_gradient(mapped_z_gradient(model, nodal, map), map);
    if (!g.allFinite()) throw Error("compliance gradient has non-finite entries");
    return g;
}

}  // namespace shapeopt::sens
