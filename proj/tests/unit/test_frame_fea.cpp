#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "shapeopt/errors.hpp"
#include "shapeopt/fea/assembly.hpp"
#include "shapeopt/fea/beam_column.hpp"
#include "shapeopt/fea/model.hpp"
#include "shapeopt/fea/solver.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace shapeopt::fea;
using shapeopt::SingularMatrixError;
using shapeopt::ValidationError;
using shapeopt::fixtures::Gen;
using shapeopt::fixtures::load;
using shapeopt::fixtures::random_frame;
using shapeopt::fixtures::rel_error;

constexpr double kE = 3.79e7;
constexpr double kA = 0.24;
constexpr double kIz = 0.0032;

BeamColumn member() { return {1, 1, 2, SectionMaterial::reference()}; }

Eigen::Matrix<double, 12, 12> block_rotation(const Eigen::Matrix3d& r) {
    Eigen::Matrix<double, 12, 12> t = Eigen::Matrix<double, 12, 12>::Zero();
    for (int b = 0; b < 4; ++b) t.block<3, 3>(3 * b, 3 * b) = r;
    return t;
}

TEST(SectionMaterial, ReferenceValuesInKilonewtonMetres) {
    const auto s = SectionMaterial::reference();
    EXPECT_EQ(s.E, 3.79e7);
    EXPECT_EQ(s.G, 1.4577e7);
    EXPECT_EQ(s.Iy, 0.0072);
    EXPECT_EQ(s.Iz, 0.0032);
    EXPECT_EQ(s.A, 0.24);
    EXPECT_DOUBLE_EQ(s.J, 0.0072 + 0.0032);
}

TEST(SectionMaterial, RejectsNonPositiveProperties) {
    auto s = SectionMaterial::reference();
    s.A = 0.0;
    EXPECT_THROW(s.validate(), ValidationError);
    EXPECT_THROW(StructuralModel({{1, Vec3(0, 0, 0)}, {2, Vec3(1, 0, 0)}}, {{1, 1, 2, s}}, {}, {}), ValidationError);
}

TEST(LocalStiffness, AxialTermForUnitLength) {
    const Matrix12d k = local_stiffness(member(), {0, 0, 0, 1, 0, 0});
    EXPECT_NEAR(k(0, 0), kE * kA / 1.0, 1e-6);
    EXPECT_NEAR(k(0, 0), 9.096e6, 1e-6);
    EXPECT_NEAR(k(0, 6), -9.096e6, 1e-6);
}

TEST(LocalStiffness, SymmetricWithSixRigidBodyModes) {
    Gen gen(21);
    for (int trial = 0; trial < 20; ++trial) {
        const ElementCoords c = gen.element();
        const Matrix12d k = local_stiffness(member(), c);
        EXPECT_EQ((k - k.transpose()).cwiseAbs().maxCoeff(), 0.0);
        Eigen::SelfAdjointEigenSolver<Matrix12d> eig(k);
        const auto& ev = eig.eigenvalues();
        const double scale = ev.cwiseAbs().maxCoeff();
        int zeros = 0;
        for (int i = 0; i < 12; ++i) {
            EXPECT_GT(ev[i], -1e-9 * scale);
            if (std::abs(ev[i]) <= 1e-9 * scale) ++zeros;
        }
        EXPECT_EQ(zeros, 6);
    }
}

TEST(LocalStiffness, AxialTranslationIsInNullspace) {
    const Matrix12d k = local_stiffness(member(), {0, 0, 0, 2.5, 0, 0});
    Eigen::Matrix<double, 12, 1> u = Eigen::Matrix<double, 12, 1>::Zero();
    u[0] = u[6] = 1.0;
    EXPECT_EQ((k * u).cwiseAbs().maxCoeff(), 0.0);
}

TEST(LocalStiffness, ZeroLengthThrows) {
    EXPECT_THROW(local_stiffness(member(), {1, 2, 3, 1, 2, 3}), ValidationError);
    EXPECT_THROW(transform_to_global(member(), {1, 2, 3, 1, 2, 3}), ValidationError);
}

TEST(TransformToGlobal, AlignedElementIsUnchanged) {
    const ElementCoords c{0.5, -1, 2, 3.5, -1, 2};
    const Matrix12d kl = local_stiffness(member(), c);
    const Matrix12d kg = transform_to_global(member(), c);
    EXPECT_LE((kg - kl).cwiseAbs().maxCoeff(), 1e-12 * kl.cwiseAbs().maxCoeff());
}

TEST(TransformToGlobal, IsTransposeTimesLocalTimesT) {
    Gen gen(22);
    for (int trial = 0; trial < 50; ++trial) {
        const ElementCoords c = gen.element();
        const Matrix12d t = transformation_matrix(c);
        const Matrix12d expect = t.transpose() * local_stiffness(member(), c) * t;
        const Matrix12d kg = transform_to_global(member(), c);
        EXPECT_LE((kg - expect).cwiseAbs().maxCoeff(), 1e-9 * expect.cwiseAbs().maxCoeff());
        EXPECT_EQ((kg - kg.transpose()).cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(TransformToGlobal, OrthonormalForAllOrientationsIncludingVertical) {
    Gen gen(23);
    std::vector<ElementCoords> cases{{0, 0, 0, 0, 0, 3}, {0, 0, 0, 0, 0, -2}, {1, 1, 1, 1, 1 + 1e-10, 5}};
    for (int i = 0; i < 100; ++i) cases.push_back(gen.element());
    for (const auto& c : cases) {
        const Matrix12d t = transformation_matrix(c);
        EXPECT_LE((t * t.transpose() - Matrix12d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        const Eigen::Matrix3d r = rotation_matrix(c);
        EXPECT_GT(r.determinant(), 0.0);
    }
}

// The roll of the local axes is fixed by the global Z reference, so the energy
// is invariant under rotations about Z (and translations) only.
TEST(TransformToGlobal, EnergyInvariantUnderRotationAboutVertical) {
    Gen gen(24);
    for (int trial = 0; trial < 100; ++trial) {
        const ElementCoords c = gen.element();
        const Eigen::Matrix3d r = Eigen::AngleAxisd(gen.uniform(-M_PI, M_PI), Vec3::UnitZ()).toRotationMatrix();
        const Vec3 a = r * Vec3(c[0], c[1], c[2]);
        const Vec3 b = r * Vec3(c[3], c[4], c[5]);
        const ElementCoords rc{a.x(), a.y(), a.z(), b.x(), b.y(), b.z()};
        Eigen::Matrix<double, 12, 1> u;
        for (int i = 0; i < 12; ++i) u[i] = gen.uniform(-1e-3, 1e-3);
        const Eigen::Matrix<double, 12, 1> ru = block_rotation(r) * u;
        const double e0 = u.dot(transform_to_global(member(), c) * u);
        const double e1 = ru.dot(transform_to_global(member(), rc) * ru);
        EXPECT_LE(rel_error(e1, e0), 1e-10);
    }
}

TEST(AssembleGlobal, SingleElementEqualsElementMatrix) {
    const ElementCoords c{0, 0, 0, 1.2, 0.4, -0.3};
    const StructuralModel m({{1, Vec3(c[0], c[1], c[2])}, {2, Vec3(c[3], c[4], c[5])}}, {member()}, {}, {});
    const Eigen::MatrixXd K = Eigen::MatrixXd(assemble_global(m));
    const Matrix12d kg = transform_to_global(member(), c);
    EXPECT_EQ((K - Eigen::MatrixXd(kg)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(AssembleGlobal, CollinearBarsSumAtSharedNode) {
    const auto s = SectionMaterial::reference();
    const StructuralModel m({{1, Vec3(0, 0, 0)}, {2, Vec3(1, 0, 0)}, {3, Vec3(2, 0, 0)}},
                            {{1, 1, 2, s}, {2, 2, 3, s}}, {}, {});
    const SparseMatrix K = assemble_global(m);
    EXPECT_NEAR(K.coeff(6, 6), 2 * kE * kA / 1.0, 1e-6);
    const Eigen::MatrixXd dense(K);
    EXPECT_EQ((dense - dense.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(AssembleGlobal, SymmetricAndBitReproducible) {
    Gen gen(25);
    const StructuralModel m = random_frame(gen, 15, 40);
    const Eigen::MatrixXd a(assemble_global(m));
    const Eigen::MatrixXd b(assemble_global(m));
    EXPECT_EQ((a - a.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Model, RejectsBadReferences) {
    const auto s = SectionMaterial::reference();
    const std::vector<NodeRecord> nodes{{1, Vec3(0, 0, 0)}, {2, Vec3(1, 0, 0)}};
    EXPECT_THROW(StructuralModel(nodes, {{1, 1, 3, s}}, {}, {}), ValidationError);
    EXPECT_THROW(StructuralModel(nodes, {{1, 1, 1, s}}, {}, {}), ValidationError);
    EXPECT_THROW(StructuralModel(nodes, {{1, 1, 2, s}}, {Support::pinned(9)}, {}), ValidationError);
    EXPECT_THROW(StructuralModel(nodes, {{1, 1, 2, s}}, {}, {load(7, 0, 1.0)}), ValidationError);
    EXPECT_THROW(StructuralModel({{1, Vec3(0, 0, 0)}, {1, Vec3(1, 0, 0)}}, {}, {}, {}), ValidationError);
}

TEST(BoundaryConditions, PinnedNodeRemovesThreeDofs) {
    Gen gen(26);
    const StructuralModel base = random_frame(gen, 6, 8);
    const StructuralModel m(base.nodes(), base.elements(), {Support::pinned(3)}, {});
    const ReducedSystem sys = apply_boundary_conditions(assemble_global(m), m.load_vector(), m);
    EXPECT_EQ(sys.K_ff.rows(), 6 * 6 - 3);
    // The index map is a strictly increasing injection into the free global DOFs.
    for (std::size_t k = 0; k + 1 < sys.free_to_global.size(); ++k) {
        EXPECT_LT(sys.free_to_global[k], sys.free_to_global[k + 1]);
    }
    for (const auto g : sys.free_to_global) EXPECT_FALSE(m.fixed_dofs()[static_cast<std::size_t>(g)]);
}

TEST(BoundaryConditions, FullyFixedModelHasZeroResponse) {
    const auto s = SectionMaterial::reference();
    const StructuralModel m({{1, Vec3(0, 0, 0)}, {2, Vec3(1, 0, 0)}}, {{1, 1, 2, s}},
                            {Support::fixed_all(1), Support::fixed_all(2)}, {load(2, 2, -5.0)});
    const ReducedSystem sys = apply_boundary_conditions(assemble_global(m), m.load_vector(), m);
    EXPECT_EQ(sys.K_ff.rows(), 0);
    const SolveResult r = analyze(m);
    EXPECT_EQ(r.compliance, 0.0);
    EXPECT_EQ(r.displacements.cwiseAbs().maxCoeff(), 0.0);
}

TEST(BoundaryConditions, UnsupportedModelIsSingular) {
    Gen gen(27);
    const StructuralModel base = random_frame(gen, 5, 6);
    const StructuralModel m(base.nodes(), base.elements(), {}, base.loads());
    try {
        analyze(m);
        FAIL() << "expected SingularMatrixError";
    } catch (const SingularMatrixError& e) {
        EXPECT_NE(std::string(e.what()).find("node"), std::string::npos);
        EXPECT_GE(e.dof(), 0);
        EXPECT_LT(e.dof(), m.dof_count());
    }
}

TEST(SolveLinear, DiagonalSystem) {
    SparseMatrix K(3, 3);
    for (int i = 0; i < 3; ++i) K.insert(i, i) = 2.0;
    const Eigen::VectorXd u = solve_linear(K, Eigen::VectorXd::Ones(3));
    for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(u[i], 0.5);
}

TEST(SolveLinear, IndefiniteMatrixNamesPivot) {
    SparseMatrix K(3, 3);
    K.insert(0, 0) = 2.0;
    K.insert(1, 1) = -1.0;
    K.insert(2, 2) = 3.0;
    try {
        solve_linear(K, Eigen::VectorXd::Ones(3));
        FAIL() << "expected SingularMatrixError";
    } catch (const SingularMatrixError& e) {
        EXPECT_EQ(e.dof(), 1);
    }
}

TEST(SolveLinear, CantileverTipDeflection) {
    // Tip load across the member in global Y bends about local z (Iz).
    const double L = 2.0;
    const double P = 1.0;
    const auto s = SectionMaterial::reference();
    const StructuralModel m({{1, Vec3(0, 0, 0)}, {2, Vec3(L, 0, 0)}}, {{1, 1, 2, s}}, {Support::fixed_all(1)},
                            {load(2, 1, P)});
    const SolveResult r = analyze(m);
    const double expect = P * L * L * L / (3 * kE * kIz);
    EXPECT_LE(rel_error(r.displacements[6 + 1], expect), 1e-9);
    EXPECT_NEAR(r.displacements[6 + 1], 2.199e-5, 1e-8);
}

TEST(SolveLinear, ResidualWithinTolerance) {
    Gen gen(28);
    for (int trial = 0; trial < 10; ++trial) {
        const StructuralModel m = random_frame(gen, 20, 45);
        const ReducedSystem sys = apply_boundary_conditions(assemble_global(m), m.load_vector(), m);
        const Eigen::VectorXd u = solve_linear(sys.K_ff, sys.f_f);
        const double res = (sys.K_ff * u - sys.f_f).cwiseAbs().maxCoeff() / sys.f_f.cwiseAbs().maxCoeff();
        EXPECT_LE(res, 1e-9);
    }
}

TEST(SolveLinear, RefinementInvariantForSimplySupportedBeam) {
    // Cubic elements are exact under nodal loads, so 2 and 4 elements give the same midspan deflection.
    const auto midspan = [](int elements) {
        const auto s = SectionMaterial::reference();
        std::vector<NodeRecord> nodes;
        std::vector<BeamColumn> members;
        for (int i = 0; i <= elements; ++i) nodes.push_back({i + 1, Vec3(6.0 * i / elements, 0, 0)});
        for (int i = 0; i < elements; ++i) members.push_back({i + 1, i + 1, i + 2, s});
        Support left{1, {true, true, true, true, false, false}};
        Support right = Support::pinned(elements + 1);
        const int mid = elements / 2 + 1;
        const StructuralModel m(nodes, members, {left, right}, {load(mid, 2, -40.0)});
        return analyze(m).displacements[6 * (mid - 1) + 2];
    };
    const double two = midspan(2);
    const double four = midspan(4);
    EXPECT_LT(rel_error(four, two), 1e-9);
    // PL^3 / 48 EI about local y (Iy).
    EXPECT_LE(rel_error(two, -40.0 * 216.0 / (48 * kE * 0.0072)), 1e-9);
}

TEST(Compliance, Arithmetic) {
    EXPECT_DOUBLE_EQ(compliance(Eigen::VectorXd::Constant(1, 10.0), Eigen::VectorXd::Constant(1, 0.002)), 0.01);
    EXPECT_EQ(compliance(Eigen::VectorXd::Zero(4), Eigen::VectorXd::Ones(4)), 0.0);
    EXPECT_THROW(compliance(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(4)), ValidationError);
}

TEST(Compliance, EnergyIdentityAndSign) {
    Gen gen(29);
    for (int trial = 0; trial < 20; ++trial) {
        const StructuralModel m = random_frame(gen, 12, 25);
        const SolveResult r = analyze(m);
        const SparseMatrix K = assemble_global(m);
        const double strain = 0.5 * r.displacements.dot(K * r.displacements);
        EXPECT_LE(rel_error(r.compliance, strain), 1e-9);
        EXPECT_GE(r.compliance, 0.0);
        EXPECT_EQ(r.geometry_hash, m.geometry_hash());
    }
}

TEST(Compliance, ExtendedPrecisionAgreesWithDouble) {
    Gen gen(30);
    for (int trial = 0; trial < 5; ++trial) {
        const StructuralModel m = random_frame(gen, 15, 30);
        EXPECT_LE(rel_error(static_cast<double>(compliance_extended(m)), analyze(m).compliance), 1e-10);
    }
}

TEST(Model, GeometryHashTracksCoordinates) {
    Gen gen(31);
    const StructuralModel m = random_frame(gen, 5, 6);
    std::vector<Vec3> pos;
    for (const auto& n : m.nodes()) pos.push_back(n.position);
    EXPECT_EQ(m.with_positions(pos).geometry_hash(), m.geometry_hash());
    pos[2].z() += 1e-12;
    EXPECT_NE(m.with_positions(pos).geometry_hash(), m.geometry_hash());
}

}  // namespace
