#include "shapeopt/fea/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCholesky>

#include "shapeopt/errors.hpp"
#include "shapeopt/fea/beam_column_kernel.hpp"

namespace shapeopt::fea {

namespace {

// Pivots at or below this fraction of the largest diagonal entry are treated
// as zero (rigid-body mode or mechanism).
constexpr double kPivotTolerance = 1e-11;

}  // namespace

ReducedSystem apply_boundary_conditions(const SparseMatrix& K, const Eigen::VectorXd& f,
                                        const std::vector<bool>& fixed) {
    const Eigen::Index n = K.rows();
    if (K.cols() != n || f.size() != n || static_cast<Eigen::Index>(fixed.size()) != n) {
        throw ValidationError("apply_boundary_conditions: dimension mismatch");
    }
    std::vector<Eigen::Index> global_to_free(static_cast<std::size_t>(n), -1);
    ReducedSystem out;
    for (Eigen::Index g = 0; g < n; ++g) {
        if (!fixed[static_cast<std::size_t>(g)]) {
            global_to_free[static_cast<std::size_t>(g)] = static_cast<Eigen::Index>(out.free_to_global.size());
            out.free_to_global.push_back(g);
        }
    }
    const auto nf = static_cast<Eigen::Index>(out.free_to_global.size());
    out.f_f.resize(nf);
    for (Eigen::Index k = 0; k < nf; ++k) out.f_f[k] = f[out.free_to_global[static_cast<std::size_t>(k)]];

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(K.nonZeros()));
    for (Eigen::Index c = 0; c < K.outerSize(); ++c) {
        const Eigen::Index fc = global_to_free[static_cast<std::size_t>(c)];
        if (fc < 0) continue;
        for (SparseMatrix::InnerIterator it(K, c); it; ++it) {
            const Eigen::Index fr = global_to_free[static_cast<std::size_t>(it.row())];
            if (fr >= 0) triplets.emplace_back(fr, fc, it.value());
        }
    }
    out.K_ff.resize(nf, nf);
    out.K_ff.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

ReducedSystem apply_boundary_conditions(const SparseMatrix& K, const Eigen::VectorXd& f,
                                        const StructuralModel& model) {
    return apply_boundary_conditions(K, f, model.fixed_dofs());
}

Eigen::VectorXd solve_linear(const SparseMatrix& K_ff, const Eigen::VectorXd& f_f) {
    const Eigen::Index n = K_ff.rows();
    if (K_ff.cols() != n || f_f.size() != n) throw ValidationError("solve_linear: dimension mismatch");
    if (n == 0) return Eigen::VectorXd();

    const double max_diag = K_ff.diagonal().cwiseAbs().maxCoeff();
    if (!(max_diag > 0.0)) throw SingularMatrixError("stiffness matrix is zero", 0);

    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(K_ff);
    const Eigen::VectorXd d = ldlt.vectorD();
    // D is in factorisation order; map back to the reduced index.
    const auto& perm = ldlt.permutationP().indices();
    std::vector<Eigen::Index> order_to_index(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order_to_index[static_cast<std::size_t>(perm[i])] = i;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (!(d[k] > kPivotTolerance * max_diag)) {
            const Eigen::Index idx = order_to_index[static_cast<std::size_t>(k)];
            throw SingularMatrixError("stiffness matrix is singular or not positive definite at reduced DOF " +
                                          std::to_string(idx),
                                      idx);
        }
    }
    if (ldlt.info() != Eigen::Success) throw SingularMatrixError("LDL^T factorisation failed", 0);

    Eigen::VectorXd u = ldlt.solve(f_f);
    // A couple of refinement sweeps keep the energy accurate on stiff, slender meshes.
    const double f_norm = f_f.cwiseAbs().maxCoeff();
    for (int sweep = 0; sweep < 2 && f_norm > 0.0; ++sweep) {
        const Eigen::VectorXd r = f_f - K_ff * u;
        if (r.cwiseAbs().maxCoeff() <= 1e-14 * f_norm) break;
        u += ldlt.solve(r);
    }
    return u;
}

double compliance(const Eigen::VectorXd& f, const Eigen::VectorXd& u) {
    if (f.size() != u.size()) {
        throw ValidationError("compliance: load vector has " + std::to_string(f.size()) +
                              " entries but displacement has " + std::to_string(u.size()));
    }
    return 0.5 * f.dot(u);
}

long double compliance_extended(const StructuralModel& model) {
    using Real = long double;
    using Sparse = Eigen::SparseMatrix<Real>;

    const auto& fixed = model.fixed_dofs();
    std::vector<Eigen::Index> global_to_free(fixed.size(), -1);
    Eigen::Index nf = 0;
    for (std::size_t g = 0; g < fixed.size(); ++g) {
        if (!fixed[g]) global_to_free[g] = nf++;
    }
    if (nf == 0) return 0.0L;

    std::vector<Eigen::Triplet<Real>> triplets;
    triplets.reserve(model.element_count() * 144);
    for (std::size_t e = 0; e < model.element_count(); ++e) {
        const ElementCoords xd = model.element_coords(e);
        std::array<Real, 6> xe;
        for (std::size_t s = 0; s < 6; ++s) xe[s] = xd[s];
        const auto k = kernel::global_stiffness(model.elements()[e].section, xe);
        const auto [ni, nj] = model.element_nodes(e);
        const std::size_t base[2] = {ni * kDofsPerNode, nj * kDofsPerNode};
        for (int r = 0; r < 12; ++r) {
            const Eigen::Index fr = global_to_free[base[r / 6] + static_cast<std::size_t>(r % 6)];
            if (fr < 0) continue;
            for (int c = 0; c < 12; ++c) {
                const Eigen::Index fc = global_to_free[base[c / 6] + static_cast<std::size_t>(c % 6)];
                if (fc >= 0) triplets.emplace_back(fr, fc, k[r][c]);
            }
        }
    }
    Sparse K(nf, nf);
    K.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::Matrix<Real, Eigen::Dynamic, 1> f(nf);
    for (std::size_t g = 0; g < fixed.size(); ++g) {
        if (global_to_free[g] >= 0) f[global_to_free[g]] = model.load_vector()[static_cast<Eigen::Index>(g)];
    }

    Eigen::SimplicialLDLT<Sparse, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(K);
    const Real max_diag = K.diagonal().cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > Real(kPivotTolerance) * max_diag)) {
        throw SingularMatrixError("stiffness matrix is singular or not positive definite", 0);
    }
    Eigen::Matrix<Real, Eigen::Dynamic, 1> u = ldlt.solve(f);
    for (int sweep = 0; sweep < 2; ++sweep) u += ldlt.solve((f - K * u).eval());
    return 0.5L * f.dot(u);
}

SolveResult analyze(const StructuralModel& model) {
    const SparseMatrix K = assemble_global(model);
    const ReducedSystem sys = apply_boundary_conditions(K, model.load_vector(), model);
    Eigen::VectorXd u_f;
    try {
        u_f = solve_linear(sys.K_ff, sys.f_f);
    } catch (const SingularMatrixError& err) {
        const Eigen::Index g = sys.free_to_global.empty()
                                   ? 0
                                   : sys.free_to_global[static_cast<std::size_t>(err.dof())];
        const auto node = static_cast<std::size_t>(g / kDofsPerNode);
        const int local = static_cast<int>(g % kDofsPerNode);
        throw SingularMatrixError("stiffness matrix is singular or not positive definite: first bad pivot at node " +
                                      std::to_string(model.nodes()[node].id) + " DOF " + dof_name(local),
                                  g);
    }
    SolveResult out;
    out.displacements = Eigen::VectorXd::Zero(model.dof_count());
    for (std::size_t k = 0; k < sys.free_to_global.size(); ++k) {
        out.displacements[sys.free_to_global[k]] = u_f[static_cast<Eigen::Index>(k)];
    }
    out.compliance = compliance(model.load_vector(), out.displacements);
    out.geometry_hash = model.geometry_hash();
    return out;
}

}  // namespace shapeopt::fea
