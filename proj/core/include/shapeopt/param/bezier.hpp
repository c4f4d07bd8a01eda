#pragma once

#include <vector>

#include <Eigen/Core>

namespace shapeopt::param {

using Vec3 = Eigen::Vector3d;

/// Bernstein basis polynomial C(n,i) u^i (1-u)^(n-i); requires 0 <= i <= n and u in [0,1].
double bernstein(int n, int i, double u);

/// Tensor-product Bezier surface of degrees (n, m) with an (n+1) x (m+1) control net.
struct BezierSurfaceDef {
    int degree_u{0};
    int degree_v{0};
    /// Row-major by i: control point (i, j) lives at i * (degree_v + 1) + j.
    std::vector<Vec3> control_points;

    int rows() const { return degree_u + 1; }
    int cols() const { return degree_v + 1; }
    std::size_t control_index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols()) + static_cast<std::size_t>(j);
    }
    const Vec3& control(int i, int j) const { return control_points[control_index(i, j)]; }
    Vec3& control(int i, int j) { return control_points[control_index(i, j)]; }

    void validate() const;

    friend bool operator==(const BezierSurfaceDef& a, const BezierSurfaceDef& b) {
        return a.degree_u == b.degree_u && a.degree_v == b.degree_v && a.control_points == b.control_points;
    }
};

/// Control net laid out on a regular plan grid [x0, x0+lx] x [y0, y0+ly] with all heights zero.
BezierSurfaceDef make_plan_grid_surface(int degree_u, int degree_v, double x0, double y0, double lx, double ly);

/// P(u, v) = sum_i sum_j B_i^n(u) B_j^m(v) p_ij.
Vec3 bezier_point(const BezierSurfaceDef& surface, double u, double v);

/// Products B_i^n(u) B_j^m(v) for every control point, in control_index order.
Eigen::VectorXd bezier_weights(const BezierSurfaceDef& surface, double u, double v);

}  // namespace shapeopt::param
