#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include <gtest/gtest.h>

#include "shapeopt/autodiff/forward.hpp"
#include "shapeopt/autodiff/jet.hpp"
#include "support/fixtures.hpp"

namespace {

using shapeopt::DomainError;
using shapeopt::ValidationError;
using shapeopt::ad::Jet;
using shapeopt::fixtures::Gen;
using shapeopt::fixtures::rel_error;

template <class A, class B>
concept Addable = requires(A a, B b) { a + b; };

// Widths are part of the type, so mixing them cannot compile.
static_assert(Addable<Jet<2>, Jet<2>>);
static_assert(!Addable<Jet<2>, Jet<3>>);

TEST(SeedInputs, BothSeededGetBasisRows) {
    const std::array<double, 2> v{2.0, 1.0};
    const std::array<std::size_t, 2> dirs{0, 1};
    const auto jets = shapeopt::ad::seed_inputs<2>(v, dirs);
    ASSERT_EQ(jets.size(), 2u);
    EXPECT_EQ(jets[0].value, 2.0);
    EXPECT_EQ(jets[0].tangent, (std::array<double, 2>{1.0, 0.0}));
    EXPECT_EQ(jets[1].value, 1.0);
    EXPECT_EQ(jets[1].tangent, (std::array<double, 2>{0.0, 1.0}));
}

TEST(SeedInputs, UnseededInputIsConstant) {
    const std::array<double, 1> v{5.0};
    const auto jets = shapeopt::ad::seed_inputs<1>(v, std::span<const std::size_t>{});
    EXPECT_EQ(jets[0].value, 5.0);
    EXPECT_EQ(jets[0].tangent[0], 0.0);
}

TEST(SeedInputs, RejectsNonFiniteWithIndex) {
    const std::array<double, 2> v{1.0, std::numeric_limits<double>::quiet_NaN()};
    try {
        shapeopt::ad::seed_all<2>(v);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("input 1"), std::string::npos);
    }
}

TEST(SeedInputs, RejectsUnknownAndRepeatedDirections) {
    const std::array<double, 2> v{1.0, 2.0};
    const std::array<std::size_t, 1> out_of_range{2};
    EXPECT_THROW(shapeopt::ad::seed_inputs<1>(v, out_of_range), ValidationError);
    const std::array<std::size_t, 2> twice{1, 1};
    EXPECT_THROW(shapeopt::ad::seed_inputs<2>(v, twice), ValidationError);
}

TEST(Jet, ConstantHasZeroTangent) {
    const Jet<4> c(3.5);
    for (double t : c.tangent) EXPECT_EQ(t, 0.0);
}

TEST(JacobianForward, TraceExampleMatchesSymbolicDerivative) {
    // f(x1, x2) = sin(x1 x2^2) + ln(x1^2); derivatives written out by hand.
    const auto f = [](std::span<const Jet<2>> x) { return sin(x[0] * x[1] * x[1]) + log(x[0] * x[0]); };
    const std::array<double, 2> p{2.0, 1.0};
    const Eigen::MatrixXd jac = shapeopt::ad::jacobian_forward<2>(f, p);
    const double x1 = 2.0, x2 = 1.0;
    const double d1 = std::cos(x1 * x2 * x2) * x2 * x2 + 2.0 / x1;
    const double d2 = std::cos(x1 * x2 * x2) * 2.0 * x1 * x2;
    EXPECT_NEAR(jac(0, 0), d1, 1e-12);
    EXPECT_NEAR(jac(0, 1), d2, 1e-12);
    EXPECT_NEAR(jac(0, 0), 0.583853, 1e-6);
    EXPECT_NEAR(jac(0, 1), -1.664587, 1e-6);
}

TEST(JacobianForward, IdentityAndLinearity) {
    const std::array<double, 1> p1{7.25};
    const auto id = shapeopt::ad::jacobian_forward<1>([](std::span<const Jet<1>> x) { return x[0]; }, p1);
    EXPECT_EQ(id(0, 0), 1.0);

    const std::array<double, 2> p2{3.0, 4.0};
    const auto sum = shapeopt::ad::jacobian_forward<2>([](std::span<const Jet<2>> x) { return x[0] + x[1]; }, p2);
    EXPECT_EQ(sum(0, 0), 1.0);
    EXPECT_EQ(sum(0, 1), 1.0);
}

TEST(JacobianForward, VectorOutput) {
    const std::array<double, 2> p{1.5, -0.5};
    const auto jac = shapeopt::ad::jacobian_forward<2>(
        [](std::span<const Jet<2>> x) { return std::vector<Jet<2>>{x[0] * x[1], x[0] - 3.0 * x[1]}; }, p);
    ASSERT_EQ(jac.rows(), 2);
    EXPECT_EQ(jac(0, 0), -0.5);
    EXPECT_EQ(jac(0, 1), 1.5);
    EXPECT_EQ(jac(1, 0), 1.0);
    EXPECT_EQ(jac(1, 1), -3.0);
}

TEST(JacobianForward, DomainErrorsNameTheOperation) {
    const std::array<double, 1> neg{-1.0};
    try {
        shapeopt::ad::jacobian_forward<1>([](std::span<const Jet<1>> x) { return log(x[0]); }, neg);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("log", 0), 0u);
    }
    try {
        shapeopt::ad::jacobian_forward<1>([](std::span<const Jet<1>> x) { return sqrt(x[0]); }, neg);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("sqrt", 0), 0u);
    }
    const std::array<double, 1> zero{0.0};
    EXPECT_THROW(shapeopt::ad::jacobian_forward<1>([](std::span<const Jet<1>> x) { return 1.0 / x[0]; }, zero),
                 DomainError);
    EXPECT_THROW(shapeopt::ad::jacobian_forward<1>([](std::span<const Jet<1>> x) { return pow(x[0], 0.5); }, neg),
                 DomainError);
}

TEST(LineLength, ThreeFourFive) {
    const auto g = shapeopt::ad::line_length_jacobian(0, 0, 3, 4);
    const std::array<double, 4> expect{-0.6, -0.8, 0.6, 0.8};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(g[i], expect[i], 1e-12);
}

TEST(LineLength, AxisAlignedUnit) {
    const auto g = shapeopt::ad::line_length_jacobian(0, 0, 1, 0);
    EXPECT_EQ(g[0], -1.0);
    EXPECT_EQ(g[1], 0.0);
    EXPECT_EQ(g[2], 1.0);
    EXPECT_EQ(g[3], 0.0);
}

TEST(LineLength, CoincidentPointsThrow) {
    EXPECT_THROW(shapeopt::ad::line_length_jacobian(1, 1, 1, 1), DomainError);
}

// Property: every elementary operation agrees with a central difference.
struct UnaryCase {
    const char* name;
    std::function<Jet<1>(const Jet<1>&)> jet;
    std::function<double(double)> plain;
    double lo;
    double hi;
};

TEST(JetProperties, UnaryOpsMatchCentralDifference) {
    const std::vector<UnaryCase> cases{
        {"sqrt", [](const Jet<1>& a) { return sqrt(a); }, [](double a) { return std::sqrt(a); }, 0.1, 10.0},
        {"sin", [](const Jet<1>& a) { return sin(a); }, [](double a) { return std::sin(a); }, -6.0, 6.0},
        {"cos", [](const Jet<1>& a) { return cos(a); }, [](double a) { return std::cos(a); }, -6.0, 6.0},
        {"log", [](const Jet<1>& a) { return log(a); }, [](double a) { return std::log(a); }, 0.1, 10.0},
        {"pow3", [](const Jet<1>& a) { return pow(a, 3.0); }, [](double a) { return a * a * a; }, -3.0, 3.0},
        {"pow1.7", [](const Jet<1>& a) { return pow(a, 1.7); }, [](double a) { return std::pow(a, 1.7); }, 0.1, 5.0},
        {"recip", [](const Jet<1>& a) { return 1.0 / a; }, [](double a) { return 1.0 / a; }, 0.2, 5.0},
        {"neg", [](const Jet<1>& a) { return -a; }, [](double a) { return -a; }, -5.0, 5.0},
    };
    Gen gen(11);
    for (const auto& c : cases) {
        for (int trial = 0; trial < 200; ++trial) {
            const double v = gen.uniform(c.lo, c.hi);
            const double h = 1e-6 * std::max(1.0, std::abs(v));
            const double fd = (c.plain(v + h) - c.plain(v - h)) / (2 * h);
            const double ad = c.jet(Jet<1>::variable(v, 0)).tangent[0];
            // Derivatives that vanish (cos near its extrema) are compared absolutely.
            EXPECT_LE(std::abs(ad - fd), 1e-6 * std::max(1.0, std::abs(fd))) << c.name << " at " << v;
        }
    }
}

TEST(JetProperties, BinaryOpsMatchCentralDifference) {
    Gen gen(12);
    using BinaryJet = std::function<Jet<2>(const Jet<2>&, const Jet<2>&)>;
    using BinaryPlain = std::function<double(double, double)>;
    const std::vector<std::pair<BinaryJet, BinaryPlain>> ops{
        {[](const Jet<2>& a, const Jet<2>& b) { return a + b; }, [](double a, double b) { return a + b; }},
        {[](const Jet<2>& a, const Jet<2>& b) { return a - b; }, [](double a, double b) { return a - b; }},
        {[](const Jet<2>& a, const Jet<2>& b) { return a * b; }, [](double a, double b) { return a * b; }},
        {[](const Jet<2>& a, const Jet<2>& b) { return a / b; }, [](double a, double b) { return a / b; }},
        {[](const Jet<2>& a, const Jet<2>& b) { return pow(a, b); }, [](double a, double b) { return std::pow(a, b); }},
    };
    for (const auto& [jet, plain] : ops) {
        for (int trial = 0; trial < 200; ++trial) {
            const double a = gen.uniform(0.5, 4.0);
            const double b = gen.uniform(0.5, 4.0);
            const Jet<2> r = jet(Jet<2>::variable(a, 0), Jet<2>::variable(b, 1));
            const double ha = 1e-6 * std::max(1.0, a);
            const double hb = 1e-6 * std::max(1.0, b);
            const double fa = (plain(a + ha, b) - plain(a - ha, b)) / (2 * ha);
            const double fb = (plain(a, b + hb) - plain(a, b - hb)) / (2 * hb);
            EXPECT_LE(std::abs(r.tangent[0] - fa), 1e-6 * std::max(1.0, std::abs(fa)));
            EXPECT_LE(std::abs(r.tangent[1] - fb), 1e-6 * std::max(1.0, std::abs(fb)));
        }
    }
}

TEST(JetProperties, SumAndProductRulesAreExact) {
    Gen gen(13);
    for (int trial = 0; trial < 500; ++trial) {
        Jet<3> a(gen.uniform(-5, 5));
        Jet<3> b(gen.uniform(-5, 5));
        for (std::size_t k = 0; k < 3; ++k) {
            a.tangent[k] = gen.uniform(-2, 2);
            b.tangent[k] = gen.uniform(-2, 2);
        }
        const Jet<3> s = a + b;
        const Jet<3> p = a * b;
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_EQ(s.tangent[k], a.tangent[k] + b.tangent[k]);
            EXPECT_EQ(p.tangent[k], a.value * b.tangent[k] + b.value * a.tangent[k]);
        }
    }
}

TEST(JetProperties, CompositionJacobianIsProductOfJacobians) {
    // g: R^2 -> R^2 and f: R^2 -> R^2, both polynomial, with hand-written Jacobians.
    const auto g = [](std::span<const Jet<2>> x) {
        return std::vector<Jet<2>>{x[0] * x[0] * x[1] - 2.0 * x[1], 3.0 * x[0] + x[0] * x[1] * x[1]};
    };
    const auto jg = [](double x0, double x1) {
        Eigen::Matrix2d j;
        j << 2 * x0 * x1, x0 * x0 - 2.0, 3.0 + x1 * x1, 2 * x0 * x1;
        return j;
    };
    const auto jf = [](double y0, double y1) {
        // f(y) = (y0 y1, y0^3 - y1)
        Eigen::Matrix2d j;
        j << y1, y0, 3 * y0 * y0, -1.0;
        return j;
    };
    const auto fg = [&](std::span<const Jet<2>> x) {
        const auto y = g(x);
        return std::vector<Jet<2>>{y[0] * y[1], y[0] * y[0] * y[0] - y[1]};
    };
    Gen gen(14);
    for (int trial = 0; trial < 200; ++trial) {
        const std::array<double, 2> p{gen.uniform(-2, 2), gen.uniform(-2, 2)};
        const double y0 = p[0] * p[0] * p[1] - 2.0 * p[1];
        const double y1 = 3.0 * p[0] + p[0] * p[1] * p[1];
        const Eigen::Matrix2d expect = jf(y0, y1) * jg(p[0], p[1]);
        const Eigen::MatrixXd got = shapeopt::ad::jacobian_forward<2>(fg, p);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                EXPECT_LE(std::abs(got(r, c) - expect(r, c)), 1e-12 * std::max(1.0, std::abs(expect(r, c))));
            }
        }
    }
}

}  // namespace
