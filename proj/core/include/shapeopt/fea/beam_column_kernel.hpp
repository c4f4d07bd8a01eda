#pragma once

// Scalar-generic beam-column stiffness. Instantiated with double for analysis
// and with ad::Jet<6> for coordinate sensitivities, so both paths share one
// sequence of floating-point operations.

#include <array>
#include <cmath>
#include <string>

#include "shapeopt/autodiff/jet.hpp"
#include "shapeopt/errors.hpp"
#include "shapeopt/fea/model.hpp"

namespace shapeopt::fea::kernel {

using std::sqrt;
using ad::sqrt;

/// Elements closer than this to the global Z axis use the (1,0,0) reference vector.
inline constexpr double kVerticalTolerance = 1e-8;

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <class T>
using Mat12 = std::array<std::array<T, 12>, 12>;

template <class T>
T element_length(const std::array<T, 6>& xe) {
    const T dx = xe[3] - xe[0];
    const T dy = xe[4] - xe[1];
    const T dz = xe[5] - xe[2];
    const T sq = dx * dx + dy * dy + dz * dz;
    if (!(ad::value_of(sq) > 0.0)) throw ValidationError("beam-column has zero length");
    return sqrt(sq);
}

/// Rows are the local x, y, z axes expressed in global coordinates.
/// Local x runs from node i to node j; local y = ref x local_x (normalised)
/// with ref = global Z, or global X for near-vertical members; local z = x cross y.
template <class T>
Mat3<T> rotation(const std::array<T, 6>& xe) {
    const T length = element_length(xe);
    const std::array<T, 3> ex{(xe[3] - xe[0]) / length, (xe[4] - xe[1]) / length, (xe[5] - xe[2]) / length};

    std::array<T, 3> cr;
    const double horiz = std::sqrt(ad::value_of(ex[0]) * ad::value_of(ex[0]) +
                                   ad::value_of(ex[1]) * ad::value_of(ex[1]));
    if (horiz > kVerticalTolerance) {
        // (0,0,1) x ex
        cr = {-ex[1], ex[0], T(0.0)};
    } else {
        // (1,0,0) x ex
        cr = {T(0.0), -ex[2], ex[1]};
    }
    const T norm = sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
    const std::array<T, 3> ey{cr[0] / norm, cr[1] / norm, cr[2] / norm};
    const std::array<T, 3> ez{ex[1] * ey[2] - ex[2] * ey[1], ex[2] * ey[0] - ex[0] * ey[2],
                              ex[0] * ey[1] - ex[1] * ey[0]};
    return {ex, ey, ez};
}

/// Euler-Bernoulli 3D frame stiffness in local axes. DOF order per node:
/// ux, uy, uz, rx, ry, rz. Bending in the local x-y plane uses Iz, in x-z uses Iy.
template <class T>
Mat12<T> local_stiffness(const SectionMaterial& s, const T& length) {
    Mat12<T> k;
    for (auto& row : k) row.fill(T(0.0));

    const T inv_l = 1.0 / length;
    const T inv_l2 = inv_l * inv_l;
    const T inv_l3 = inv_l2 * inv_l;

    const T axial = (s.E * s.A) * inv_l;
    const T torsion = (s.G * s.J) * inv_l;
    const T z12 = (12.0 * s.E * s.Iz) * inv_l3;
    const T z6 = (6.0 * s.E * s.Iz) * inv_l2;
    const T z4 = (4.0 * s.E * s.Iz) * inv_l;
    const T z2 = (2.0 * s.E * s.Iz) * inv_l;
    const T y12 = (12.0 * s.E * s.Iy) * inv_l3;
    const T y6 = (6.0 * s.E * s.Iy) * inv_l2;
    const T y4 = (4.0 * s.E * s.Iy) * inv_l;
    const T y2 = (2.0 * s.E * s.Iy) * inv_l;

    auto set = [&k](int r, int c, const T& v) {
        k[r][c] = v;
        k[c][r] = v;
    };

    set(0, 0, axial);
    set(0, 6, -axial);
    set(6, 6, axial);

    set(3, 3, torsion);
    set(3, 9, -torsion);
    set(9, 9, torsion);

    // x-y plane: uy_i(1), rz_i(5), uy_j(7), rz_j(11)
    set(1, 1, z12);
    set(1, 5, z6);
    set(1, 7, -z12);
    set(1, 11, z6);
    set(5, 5, z4);
    set(5, 7, -z6);
    set(5, 11, z2);
    set(7, 7, z12);
    set(7, 11, -z6);
    set(11, 11, z4);

    // x-z plane: uz_i(2), ry_i(4), uz_j(8), ry_j(10)
    set(2, 2, y12);
    set(2, 4, -y6);
    set(2, 8, -y12);
    set(2, 10, -y6);
    set(4, 4, y4);
    set(4, 8, y6);
    set(4, 10, y2);
    set(8, 8, y12);
    set(8, 10, y6);
    set(10, 10, y4);
    return k;
}

/// k_global = T^T k_local T with T = blockdiag(R, R, R, R), computed blockwise
/// on the upper triangle and mirrored so the result is exactly symmetric.
template <class T>
Mat12<T> global_stiffness(const SectionMaterial& s, const std::array<T, 6>& xe) {
    const T length = element_length(xe);
    const Mat3<T> r = rotation(xe);
    const Mat12<T> kl = local_stiffness(s, length);

    Mat12<T> kg;
    for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
            // tmp = K_ab * R
            Mat3<T> tmp;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    T acc = kl[3 * a + i][3 * b] * r[0][j];
                    acc += kl[3 * a + i][3 * b + 1] * r[1][j];
                    acc += kl[3 * a + i][3 * b + 2] * r[2][j];
                    tmp[i][j] = acc;
                }
            }
            // block = R^T * tmp
            for (int i = 0; i < 3; ++i) {
                const int j0 = (a == b) ? i : 0;
                for (int j = j0; j < 3; ++j) {
                    T acc = r[0][i] * tmp[0][j];
                    acc += r[1][i] * tmp[1][j];
                    acc += r[2][i] * tmp[2][j];
                    kg[3 * a + i][3 * b + j] = acc;
                    kg[3 * b + j][3 * a + i] = acc;
                }
            }
        }
    }
    return kg;
}

}  // namespace shapeopt::fea::kernel
