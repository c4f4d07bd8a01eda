#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "shapeopt/autodiff/jet.hpp"
#include "shapeopt/errors.hpp"

namespace shapeopt::ad {

/// Builds the forward tangent trace initialisation: the k-th seeded input gets
/// basis direction k, unseeded inputs are constants with a zero tangent.
template <std::size_t N>
std::vector<Jet<N>> seed_inputs(std::span<const double> values, std::span<const std::size_t> seeded) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError("seed_inputs: input " + std::to_string(i) + " is not finite");
        }
    }
    if (seeded.size() > N) {
        throw ValidationError("seed_inputs: " + std::to_string(seeded.size()) + " seeded inputs exceed tangent width " +
                              std::to_string(N));
    }
    std::vector<Jet<N>> out;
    out.reserve(values.size());
    for (double v : values) out.emplace_back(v);
    for (std::size_t k = 0; k < seeded.size(); ++k) {
        const std::size_t i = seeded[k];
        if (i >= values.size()) {
            throw ValidationError("seed_inputs: direction index " + std::to_string(i) + " is not an input");
        }
        for (std::size_t prev = 0; prev < k; ++prev) {
            if (seeded[prev] == i) throw ValidationError("seed_inputs: input " + std::to_string(i) + " seeded twice");
        }
        out[i].tangent[k] = 1.0;
    }
    return out;
}

/// Seeds every input, input i along direction i.
template <std::size_t N>
std::vector<Jet<N>> seed_all(std::span<const double> values) {
    std::array<std::size_t, N> dirs{};
    for (std::size_t i = 0; i < N; ++i) dirs[i] = i;
    if (values.size() != N) {
        throw ValidationError("seed_all: expected " + std::to_string(N) + " inputs, got " +
                              std::to_string(values.size()));
    }
    return seed_inputs<N>(values, dirs);
}

/// m x N Jacobian of func at point. func takes a span of N jets and returns
/// either a single jet or a vector of jets.
template <std::size_t N, class Func>
Eigen::MatrixXd jacobian_forward(Func&& func, std::span<const double> point) {
    const std::vector<Jet<N>> x = seed_all<N>(point);
    using Out = std::invoke_result_t<Func&, std::span<const Jet<N>>>;
    if constexpr (std::is_same_v<std::decay_t<Out>, Jet<N>>) {
        const Jet<N> y = func(std::span<const Jet<N>>(x));
        Eigen::MatrixXd jac(1, N);
        for (std::size_t i = 0; i < N; ++i) jac(0, static_cast<Eigen::Index>(i)) = y.tangent[i];
        return jac;
    } else {
        const auto y = func(std::span<const Jet<N>>(x));
        Eigen::MatrixXd jac(static_cast<Eigen::Index>(y.size()), N);
        for (std::size_t j = 0; j < y.size(); ++j) {
            for (std::size_t i = 0; i < N; ++i) {
                jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = y[j].tangent[i];
            }
        }
        return jac;
    }
}

/// Gradient of the length of the segment (x1,y1)-(x2,y2) with respect to
/// (x1, y1, x2, y2).
inline std::array<double, 4> line_length_jacobian(double x1, double y1, double x2, double y2) {
    if (x1 == x2 && y1 == y2) {
        throw DomainError("line_length_jacobian: coincident end points, length gradient is singular");
    }
    const std::array<double, 4> pt{x1, y1, x2, y2};
    const Eigen::MatrixXd jac = jacobian_forward<4>(
        [](std::span<const Jet<4>> v) {
            const Jet<4> dx = v[0] - v[2];
            const Jet<4> dy = v[1] - v[3];
            return sqrt(dx * dx + dy * dy);
        },
        pt);
    return {jac(0, 0), jac(0, 1), jac(0, 2), jac(0, 3)};
}

}  // namespace shapeopt::ad
