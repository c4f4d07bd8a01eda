#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "shapeopt/fea/assembly.hpp"
#include "shapeopt/fea/model.hpp"

namespace shapeopt::fea {

/// System restricted to the free DOFs. free_to_global[k] is the global DOF of
/// reduced unknown k.
struct ReducedSystem {
    SparseMatrix K_ff;
    Eigen::VectorXd f_f;
    std::vector<Eigen::Index> free_to_global;
};

/// Removes the rows and columns of fixed DOFs. fixed has one flag per global DOF.
ReducedSystem apply_boundary_conditions(const SparseMatrix& K, const Eigen::VectorXd& f,
                                        const std::vector<bool>& fixed);

/// Same, with the mask taken from the model's supports.
ReducedSystem apply_boundary_conditions(const SparseMatrix& K, const Eigen::VectorXd& f,
                                        const StructuralModel& model);

/// Solves K_ff u = f_f with a sparse LDL^T factorisation. Throws
/// SingularMatrixError carrying the reduced index of the first non-positive pivot.
Eigen::VectorXd solve_linear(const SparseMatrix& K_ff, const Eigen::VectorXd& f_f);

/// C = 1/2 f^T u.
double compliance(const Eigen::VectorXd& f, const Eigen::VectorXd& u);

struct SolveResult {
    Eigen::VectorXd displacements;  // length 6n, zeros on fixed DOFs
    double compliance{0.0};         // kN m
    std::uint64_t geometry_hash{0};
};

/// Compliance assembled and solved in long double arithmetic. Several times
/// slower than analyze(); meant for finite-difference checks, where rounding in
/// double-precision assembly would swamp differences of C at small steps.
long double compliance_extended(const StructuralModel& model);

/// Assemble, constrain, solve and evaluate compliance. Singularities are
/// reported with the node id and DOF name.
SolveResult analyze(const StructuralModel& model);

}  // namespace shapeopt::fea
