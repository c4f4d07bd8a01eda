#include "shapeopt/sensitivity/stiffness_tensor.hpp"

#include <set>
#include <string>

#include "shapeopt/errors.hpp"
#include "shapeopt/sensitivity/element_jacobian.hpp"

namespace shapeopt::sens {

const fea::SparseMatrix& GlobalStiffnessJacobian::slice(Eigen::Index coordinate) const {
    const auto it = slices_.find(coordinate);
    if (it == slices_.end()) throw ValidationError("no stiffness slice for coordinate " + std::to_string(coordinate));
    return it->second;
}

std::vector<Eigen::Index> GlobalStiffnessJacobian::coordinates() const {
    std::vector<Eigen::Index> out;
    out.reserve(slices_.size());
    for (const auto& [q, s] : slices_) out.push_back(q);
    return out;
}

double GlobalStiffnessJacobian::contract(Eigen::Index coordinate, const Eigen::VectorXd& u) const {
    if (u.size() != dof_count_) throw ValidationError("contract: displacement length does not match the tensor");
    return -0.5 * u.dot(slice(coordinate) * u);
}

namespace {

GlobalStiffnessJacobian assemble(const fea::StructuralModel& model, const std::set<Eigen::Index>& wanted) {
    std::map<Eigen::Index, std::vector<Eigen::Triplet<double>>> triplets;
    for (std::size_t e = 0; e < model.element_count(); ++e) {
        const auto [ni, nj] = model.element_nodes(e);
        if (ni >= model.node_count() || nj >= model.node_count()) {
            throw ValidationError("element " + std::to_string(model.elements()[e].tag) + " has an out-of-range node");
        }
        const std::size_t ends[2] = {ni, nj};
        bool needed = false;
        for (std::size_t s = 0; s < 6; ++s) needed |= wanted.count(static_cast<Eigen::Index>(3 * ends[s / 3] + s % 3)) != 0;
        if (!needed) continue;

        const ElementJacobian jac = element_stiffness_jacobian(model.elements()[e], model.element_coords(e));
        const Eigen::Index base[2] = {static_cast<Eigen::Index>(ni) * fea::kDofsPerNode,
                                      static_cast<Eigen::Index>(nj) * fea::kDofsPerNode};
        for (std::size_t s = 0; s < 6; ++s) {
            const auto q = static_cast<Eigen::Index>(3 * ends[s / 3] + s % 3);
            if (!wanted.count(q)) continue;
            auto& list = triplets[q];
            for (int r = 0; r < 12; ++r)
                for (int c = 0; c < 12; ++c) list.emplace_back(base[r / 6] + r % 6, base[c / 6] + c % 6, jac[s](r, c));
        }
    }
    std::map<Eigen::Index, fea::SparseMatrix> slices;
    for (auto& [q, list] : triplets) {
        fea::SparseMatrix m(model.dof_count(), model.dof_count());
        m.setFromTriplets(list.begin(), list.end());
        slices.emplace(q, std::move(m));
    }
    return GlobalStiffnessJacobian(model.dof_count(), std::move(slices));
}

}  // namespace

GlobalStiffnessJacobian assemble_global_stiffness_jacobian(const fea::StructuralModel& model) {
    std::set<Eigen::Index> all;
    for (Eigen::Index q = 0; q < static_cast<Eigen::Index>(3 * model.node_count()); ++q) all.insert(q);
    return assemble(model, all);
}

GlobalStiffnessJacobian assemble_global_stiffness_jacobian(const fea::StructuralModel& model,
                                                           const param::DesignMap& map) {
    map.validate(model);
    std::set<Eigen::Index> wanted;
    for (int id : map.mapped_nodes()) wanted.insert(static_cast<Eigen::Index>(3 * model.index_of(id) + 2));
    return assemble(model, wanted);
}

}  // namespace shapeopt::sens
