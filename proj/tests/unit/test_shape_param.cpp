#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "shapeopt/errors.hpp"
#include "shapeopt/param/bezier.hpp"
#include "shapeopt/param/cases.hpp"
#include "shapeopt/param/design_map.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace shapeopt::param;
using shapeopt::ValidationError;
using shapeopt::fea::NodeRecord;
using shapeopt::fea::StructuralModel;
using shapeopt::fea::Vec3;
using shapeopt::fixtures::Gen;

// Bernstein polynomial evaluated from first principles with factorials.
double bernstein_oracle(int n, int i, double u) {
    const double c = std::tgamma(n + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(n - i + 1.0));
    return c * std::pow(u, i) * std::pow(1.0 - u, n - i);
}

BezierSurfaceDef bilinear(double z00, double z01, double z10, double z11) {
    BezierSurfaceDef s = make_plan_grid_surface(1, 1, 0.0, 0.0, 1.0, 1.0);
    s.control(0, 0).z() = z00;
    s.control(0, 1).z() = z01;
    s.control(1, 0).z() = z10;
    s.control(1, 1).z() = z11;
    return s;
}

// 3 x 3 node grid on the unit square, node id j*3 + i + 1 at parameters (i/2, j/2).
StructuralModel unit_grid() {
    std::vector<NodeRecord> nodes;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) nodes.push_back({j * 3 + i + 1, Vec3(0.5 * i, 0.5 * j, 0.0)});
    return StructuralModel(nodes, {}, {}, {});
}

std::vector<NodeParam> unit_grid_params() {
    std::vector<NodeParam> p;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) p.push_back({j * 3 + i + 1, 0.5 * i, 0.5 * j});
    return p;
}

TEST(Bernstein, Fixtures) {
    EXPECT_EQ(bernstein(2, 0, 0.0), 1.0);
    double sum = 0.0;
    for (int i = 0; i <= 3; ++i) sum += bernstein(3, i, 0.37);
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(bernstein(2, 1, 0.5), 0.5);
}

TEST(Bernstein, RejectsOutOfRange) {
    EXPECT_THROW(bernstein(3, 4, 0.5), ValidationError);
    EXPECT_THROW(bernstein(3, -1, 0.5), ValidationError);
    EXPECT_THROW(bernstein(3, 1, 1.5), ValidationError);
    EXPECT_THROW(bernstein(3, 1, -0.1), ValidationError);
}

TEST(BernsteinProperties, PartitionOfUnityAndFactorialOracle) {
    Gen gen(41);
    for (int n = 0; n <= 10; ++n) {
        for (int trial = 0; trial < 1000; ++trial) {
            const double u = gen.uniform(0.0, 1.0);
            double sum = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double b = bernstein(n, i, u);
                EXPECT_NEAR(b, bernstein_oracle(n, i, u), 1e-13);
                sum += b;
            }
            EXPECT_LE(std::abs(sum - 1.0), 1e-12);
        }
    }
}

TEST(BezierPoint, CornersInterpolateExactly) {
    Gen gen(42);
    BezierSurfaceDef s = make_plan_grid_surface(4, 3, -1.0, 2.0, 7.0, 5.0);
    for (auto& p : s.control_points) p.z() = gen.uniform(-3, 3);
    EXPECT_EQ(bezier_point(s, 0, 0), s.control(0, 0));
    EXPECT_EQ(bezier_point(s, 1, 1), s.control(4, 3));
    EXPECT_EQ(bezier_point(s, 1, 0), s.control(4, 0));
    EXPECT_EQ(bezier_point(s, 0, 1), s.control(0, 3));
}

TEST(BezierPoint, BilinearCentreIsMean) {
    const BezierSurfaceDef s = bilinear(1.0, 2.0, 4.0, 9.0);
    const Vec3 p = bezier_point(s, 0.5, 0.5);
    EXPECT_DOUBLE_EQ(p.z(), (1.0 + 2.0 + 4.0 + 9.0) / 4.0);
    EXPECT_DOUBLE_EQ(p.x(), 0.5);
    EXPECT_DOUBLE_EQ(p.y(), 0.5);
}

TEST(BezierPoint, RejectsParametersOutsideUnitSquare) {
    const BezierSurfaceDef s = bilinear(0, 0, 0, 0);
    EXPECT_THROW(bezier_point(s, 1.01, 0.5), ValidationError);
    EXPECT_THROW(bezier_point(s, 0.5, -0.2), ValidationError);
}

TEST(BezierProperties, PointsStayInControlBoundingBox) {
    Gen gen(43);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = gen.integer(1, 6);
        const int m = gen.integer(1, 6);
        BezierSurfaceDef s = make_plan_grid_surface(n, m, 0.0, 0.0, 3.0, 2.0);
        for (auto& p : s.control_points) p += Vec3(gen.uniform(-.2, .2), gen.uniform(-.2, .2), gen.uniform(-5, 5));
        Vec3 lo = s.control_points.front();
        Vec3 hi = lo;
        for (const auto& p : s.control_points) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        for (int k = 0; k < 20; ++k) {
            const Vec3 p = bezier_point(s, gen.uniform(0, 1), gen.uniform(0, 1));
            for (int a = 0; a < 3; ++a) {
                EXPECT_GE(p[a], lo[a] - 1e-12);
                EXPECT_LE(p[a], hi[a] + 1e-12);
            }
        }
    }
}

TEST(WeightMatrix, RowsSumToOneAndCornerPicksItsControl) {
    BezierSurfaceDef s = make_plan_grid_surface(3, 3, 0, 0, 1, 1);
    std::vector<ControlRef> controls;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) controls.push_back({i, j});
    const DesignMap map = DesignMap::bezier_z(s, unit_grid_params(), controls);
    const Eigen::MatrixXd W = bezier_weight_matrix_all(map);
    for (Eigen::Index r = 0; r < W.rows(); ++r) EXPECT_NEAR(W.row(r).sum(), 1.0, 1e-14);
    // Node 1 sits at (u, v) = (0, 0).
    EXPECT_EQ(W(0, 0), 1.0);
    EXPECT_EQ(W.row(0).tail(W.cols() - 1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(WeightMatrix, MatchesFiniteDifferenceOfSurfaceHeight) {
    Gen gen(44);
    BezierSurfaceDef s = make_plan_grid_surface(4, 3, 0, 0, 1, 1);
    for (auto& p : s.control_points) p.z() = gen.uniform(-2, 2);
    const std::vector<ControlRef> controls{{1, 1}, {2, 0}, {4, 3}, {3, 2}};
    std::vector<NodeParam> params;
    for (int k = 0; k < 12; ++k) params.push_back({k + 1, gen.uniform(0, 1), gen.uniform(0, 1)});
    const DesignMap map = DesignMap::bezier_z(s, params, controls);
    const Eigen::MatrixXd W = bezier_weight_matrix(map);
    const double h = 1e-7;
    for (std::size_t c = 0; c < controls.size(); ++c) {
        BezierSurfaceDef plus = s;
        BezierSurfaceDef minus = s;
        plus.control(controls[c].i, controls[c].j).z() += h;
        minus.control(controls[c].i, controls[c].j).z() -= h;
        for (std::size_t r = 0; r < params.size(); ++r) {
            const double fd = (bezier_point(plus, params[r].u, params[r].v).z() -
                               bezier_point(minus, params[r].u, params[r].v).z()) /
                              (2 * h);
            const double w = W(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            EXPECT_LE(std::abs(fd - w), 1e-7 * std::max(std::abs(w), 1e-2));
        }
    }
}

TEST(WeightMatrix, DirectModeThrows) {
    EXPECT_THROW(bezier_weight_matrix(DesignMap::direct_z({1, 2})), ValidationError);
}

TEST(MapDesign, DirectZIdempotentAndReadBack) {
    Gen gen(45);
    const StructuralModel grid = unit_grid();
    const DesignMap map = DesignMap::direct_z({2, 5, 9});
    const StructuralModel same = map_design_to_model(grid, map, map.current_x(grid));
    EXPECT_EQ(same.nodes(), grid.nodes());
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXd x = gen.vector(3, 10.0);
        const StructuralModel moved = map_design_to_model(grid, map, x);
        EXPECT_EQ(map.current_x(moved), x);
        // X and Y never move.
        for (std::size_t k = 0; k < grid.node_count(); ++k) {
            EXPECT_EQ(moved.nodes()[k].position.head<2>(), grid.nodes()[k].position.head<2>());
        }
    }
}

TEST(MapDesign, ConstantControlsGiveConstantHeight) {
    BezierSurfaceDef s = make_plan_grid_surface(2, 2, 0, 0, 1, 1);
    std::vector<ControlRef> controls;
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) controls.push_back({i, j});
    const DesignMap map = DesignMap::bezier_z(s, unit_grid_params(), controls);
    const StructuralModel m = map_design_to_model(unit_grid(), map, Eigen::VectorXd::Constant(9, 3.25));
    for (const auto& n : m.nodes()) EXPECT_NEAR(n.position.z(), 3.25, 1e-14);
}

TEST(MapDesign, BilinearQuarterHeight) {
    const DesignMap map =
        DesignMap::bezier_z(bilinear(0, 0, 0, 0), unit_grid_params(), {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const StructuralModel m = map_design_to_model(unit_grid(), map, Eigen::Vector4d(0, 0, 0, 1));
    // Centre node 5 at (0.5, 0.5).
    EXPECT_DOUBLE_EQ(m.nodes()[4].position.z(), 0.25);
}

TEST(MapDesign, LengthMismatchThrows) {
    const DesignMap map = DesignMap::direct_z({1, 2});
    EXPECT_THROW(map_design_to_model(unit_grid(), map, Eigen::VectorXd::Zero(3)), ValidationError);
}

TEST(DesignMapValidation, RejectsBadReferences) {
    const StructuralModel grid = unit_grid();
    EXPECT_THROW(DesignMap::direct_z({1, 1}).validate(grid), ValidationError);
    EXPECT_THROW(DesignMap::direct_z({42}).validate(grid), ValidationError);
    auto params = unit_grid_params();
    params[3].u = 1.5;
    EXPECT_THROW(DesignMap::bezier_z(bilinear(0, 0, 0, 0), params, {{0, 0}}).validate(grid), ValidationError);
    EXPECT_THROW(DesignMap::bezier_z(bilinear(0, 0, 0, 0), unit_grid_params(), {{2, 0}}).validate(grid),
                 ValidationError);
}

TEST(ChainRule, DirectIsIdentityAndUnitColumnsPermute) {
    Gen gen(46);
    const Eigen::VectorXd g = gen.vector(3, 1.0);
    EXPECT_EQ(chain_rule_gradient(g, DesignMap::direct_z({4, 1, 7})), g);

    // Nodes sitting on control points: each design column of W holds a single 1.
    BezierSurfaceDef s = make_plan_grid_surface(1, 1, 0, 0, 1, 1);
    const std::vector<NodeParam> params{{1, 0, 0}, {2, 1, 0}, {3, 0, 1}, {4, 1, 1}};
    const DesignMap map = DesignMap::bezier_z(s, params, {{1, 1}, {0, 0}, {1, 0}, {0, 1}});
    const Eigen::VectorXd nodal = gen.vector(4, 1.0);
    const Eigen::VectorXd pulled = chain_rule_gradient(nodal, map);
    EXPECT_EQ(pulled[0], nodal[3]);
    EXPECT_EQ(pulled[1], nodal[0]);
    EXPECT_EQ(pulled[2], nodal[1]);
    EXPECT_EQ(pulled[3], nodal[2]);
    EXPECT_THROW(chain_rule_gradient(Eigen::VectorXd::Zero(2), map), ValidationError);
}

int count_pinned(const StructuralModel& m) {
    int n = 0;
    for (const auto& s : m.supports()) n += s.fixed == shapeopt::fea::Support::pinned(s.node).fixed ? 1 : 0;
    return n;
}

TEST(Cases, CountsOfTheBuiltInStructures) {
    const auto arch = generate_case_mesh("arch2d", 1);
    EXPECT_EQ(arch.model.node_count(), 21u);
    EXPECT_EQ(arch.model.element_count(), 20u);
    EXPECT_EQ(arch.design.size(), 19u);
    int ends = 0;
    for (const auto& s : arch.model.supports()) ends += s.fixed[0] && s.fixed[2] ? 1 : 0;
    EXPECT_EQ(ends, 2);
    for (const auto& l : arch.model.loads()) EXPECT_EQ(l.components[2], -10.0);

    EXPECT_EQ(generate_case_mesh("barrel", 1).model.node_count(), 225u);

    const auto hall = generate_case_mesh("mannheim", 1);
    EXPECT_EQ(hall.model.node_count(), 440u);
    EXPECT_EQ(hall.model.element_count(), 1215u);
    EXPECT_EQ(hall.design.size(), 348u);
    for (const auto& l : hall.model.loads()) EXPECT_EQ(l.components[2], -100.0);

    const auto four = generate_case_mesh("fourpoint", 1);
    EXPECT_EQ(four.model.node_count(), 256u);
    EXPECT_EQ(four.design.surface().rows(), 6);
    EXPECT_EQ(four.design.surface().cols(), 6);
    EXPECT_EQ(count_pinned(four.model), 4);
    for (const auto& l : four.model.loads()) EXPECT_EQ(l.components[2], -500.0);

    const auto two = generate_case_mesh("twoedge", 1);
    EXPECT_EQ(two.model.node_count(), 256u);
    EXPECT_EQ(count_pinned(two.model), 31);

    const auto car = generate_case_mesh("carioca", 1);
    EXPECT_EQ(car.design.surface().rows(), 10);
    EXPECT_EQ(car.design.surface().cols(), 10);
    double xmax = 0, ymax = 0;
    for (const auto& n : car.model.nodes()) {
        xmax = std::max(xmax, n.position.x());
        ymax = std::max(ymax, n.position.y());
    }
    EXPECT_DOUBLE_EQ(xmax, 50.0);
    EXPECT_DOUBLE_EQ(ymax, 25.0);
    int low = 0, level = 0;
    for (const auto& s : car.model.supports()) {
        const double z = car.model.nodes()[car.model.index_of(s.node)].position.z();
        if (std::abs(z + 6.0) < 1e-9) ++low;
        if (std::abs(z) < 1e-9) ++level;
    }
    EXPECT_GT(low, 0);
    EXPECT_GT(level, 0);
    EXPECT_EQ(low + level, static_cast<int>(car.model.supports().size()));
    for (const auto& l : car.model.loads()) EXPECT_EQ(l.components[2], -100.0);
}

TEST(Cases, ReducedBendingScalesInertia) {
    const auto base = generate_case_mesh("carioca", 1).model.elements().front().section;
    const auto soft = generate_case_mesh("carioca", 1, {true}).model.elements().front().section;
    EXPECT_DOUBLE_EQ(soft.Iy, 0.1 * base.Iy);
    EXPECT_DOUBLE_EQ(soft.Iz, 0.1 * base.Iz);
    EXPECT_DOUBLE_EQ(soft.J, soft.Iy + soft.Iz);
    EXPECT_EQ(soft.A, base.A);
}

TEST(Cases, SeedDrivesRandomHeightsDeterministically) {
    const auto a = generate_case_mesh("barrel", 5);
    const auto b = generate_case_mesh("barrel", 5);
    const auto c = generate_case_mesh("barrel", 6);
    EXPECT_EQ(a.model.nodes(), b.model.nodes());
    EXPECT_NE(a.model.nodes(), c.model.nodes());
    for (const auto& n : generate_case_mesh("arch2d", 9).model.nodes()) {
        EXPECT_GE(n.position.z(), 0.0);
        EXPECT_LE(n.position.z(), 0.5);
    }
}

TEST(Cases, UnknownIdThrows) { EXPECT_THROW(generate_case_mesh("nope", 1), ValidationError); }

TEST(SeededUniform, KnownStreamInUnitInterval) {
    SeededUniform a(3);
    SeededUniform b(3);
    for (int i = 0; i < 1000; ++i) {
        const double v = a.next();
        EXPECT_EQ(v, b.next());
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

}  // namespace
