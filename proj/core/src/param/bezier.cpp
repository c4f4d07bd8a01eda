#include "shapeopt/param/bezier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shapeopt/errors.hpp"

namespace shapeopt::param {

namespace {

double binomial(int n, int k) {
    k = std::min(k, n - k);
    double c = 1.0;
    for (int t = 1; t <= k; ++t) c = c * static_cast<double>(n - k + t) / static_cast<double>(t);
    return std::round(c);
}

void check_parameter(double u, const char* name) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw ValidationError(std::string("Bezier parameter ") + name + " = " + std::to_string(u) +
                              " is outside [0, 1]");
    }
}

}  // namespace

double bernstein(int n, int i, double u) {
    if (n < 0 || i < 0 || i > n) {
        throw ValidationError("bernstein: index " + std::to_string(i) + " out of range for degree " +
                              std::to_string(n));
    }
    check_parameter(u, "u");
    // std::pow(0, 0) == 1 covers the endpoint terms.
    return binomial(n, i) * std::pow(u, i) * std::pow(1.0 - u, n - i);
}

void BezierSurfaceDef::validate() const {
    if (degree_u < 0 || degree_v < 0) throw ValidationError("Bezier degrees must be non-negative");
    const auto expected = static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols());
    if (control_points.size() != expected) {
        throw ValidationError("Bezier control net has " + std::to_string(control_points.size()) +
                              " points, degrees require " + std::to_string(expected));
    }
    for (const auto& p : control_points) {
        if (!p.allFinite()) throw ValidationError("Bezier control point is not finite");
    }
}

BezierSurfaceDef make_plan_grid_surface(int degree_u, int degree_v, double x0, double y0, double lx, double ly) {
    BezierSurfaceDef s;
    s.degree_u = degree_u;
    s.degree_v = degree_v;
    s.control_points.resize(static_cast<std::size_t>(degree_u + 1) * static_cast<std::size_t>(degree_v + 1));
    for (int i = 0; i <= degree_u; ++i) {
        for (int j = 0; j <= degree_v; ++j) {
            const double fu = degree_u == 0 ? 0.0 : static_cast<double>(i) / degree_u;
            const double fv = degree_v == 0 ? 0.0 : static_cast<double>(j) / degree_v;
            s.control(i, j) = Vec3(x0 + fu * lx, y0 + fv * ly, 0.0);
        }
    }
    return s;
}

Eigen::VectorXd bezier_weights(const BezierSurfaceDef& surface, double u, double v) {
    check_parameter(u, "u");
    check_parameter(v, "v");
    Eigen::VectorXd bu(surface.rows());
    Eigen::VectorXd bv(surface.cols());
    for (int i = 0; i <= surface.degree_u; ++i) bu[i] = bernstein(surface.degree_u, i, u);
    for (int j = 0; j <= surface.degree_v; ++j) bv[j] = bernstein(surface.degree_v, j, v);
    Eigen::VectorXd w(static_cast<Eigen::Index>(surface.control_points.size()));
    for (int i = 0; i <= surface.degree_u; ++i)
        for (int j = 0; j <= surface.degree_v; ++j)
            w[static_cast<Eigen::Index>(surface.control_index(i, j))] = bu[i] * bv[j];
    return w;
}

Vec3 bezier_point(const BezierSurfaceDef& surface, double u, double v) {
    surface.validate();
    const Eigen::VectorXd w = bezier_weights(surface, u, v);
    Vec3 p = Vec3::Zero();
    for (std::size_t c = 0; c < surface.control_points.size(); ++c) {
        p += w[static_cast<Eigen::Index>(c)] * surface.control_points[c];
    }
    return p;
}

}  // namespace shapeopt::param
