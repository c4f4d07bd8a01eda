#pragma once

#include <map>
#include <vector>

#include <Eigen/Core>

#include "shapeopt/fea/assembly.hpp"
#include "shapeopt/fea/model.hpp"
#include "shapeopt/param/design_map.hpp"

namespace shapeopt::sens {

/// Sparse 6n x 6n x 3n tensor dK/dx. Only slices for coordinates that were
/// requested and touch at least one element are stored.
class GlobalStiffnessJacobian {
public:
    GlobalStiffnessJacobian(Eigen::Index dof_count, std::map<Eigen::Index, fea::SparseMatrix> slices)
        : dof_count_(dof_count), slices_(std::move(slices)) {}

    Eigen::Index dof_count() const { return dof_count_; }
    bool has_slice(Eigen::Index coordinate) const { return slices_.count(coordinate) != 0; }

    /// Throws ValidationError for an absent slice.
    const fea::SparseMatrix& slice(Eigen::Index coordinate) const;

    /// Stored coordinate indices (3 * node_index + axis), ascending.
    std::vector<Eigen::Index> coordinates() const;

    /// -1/2 u^T (dK/dx_q) u.
    double contract(Eigen::Index coordinate, const Eigen::VectorXd& u) const;

private:
    Eigen::Index dof_count_;
    std::map<Eigen::Index, fea::SparseMatrix> slices_;
};

/// Every coordinate of every node.
GlobalStiffnessJacobian assemble_global_stiffness_jacobian(const fea::StructuralModel& model);

/// Only the Z coordinates of the nodes the design map drives.
GlobalStiffnessJacobian assemble_global_stiffness_jacobian(const fea::StructuralModel& model,
                                                           const param::DesignMap& map);

}  // namespace shapeopt::sens
