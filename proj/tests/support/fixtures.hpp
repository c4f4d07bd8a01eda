#pragma once

// Shared helpers for the unit and acceptance tests: seeded generators for
// property tests and a few small hand-checkable structures.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "shapeopt/fea/model.hpp"

namespace shapeopt::fixtures {

/// Seeded source of random test inputs; each property test owns one.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    fea::Vec3 point(double half_width) {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width), uniform(-half_width, half_width)};
    }

    /// Element end coordinates with a length in [min_length, ...).
    fea::ElementCoords element(double min_length = 0.3) {
        while (true) {
            const fea::Vec3 a = point(2.0);
            const fea::Vec3 b = point(2.0);
            if ((b - a).norm() >= min_length) return {a.x(), a.y(), a.z(), b.x(), b.y(), b.z()};
        }
    }

    Eigen::VectorXd vector(Eigen::Index n, double scale) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(-scale, scale);
        return v;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// |a - b| / max(|b|, floor); floor keeps near-zero references from exploding.
inline double rel_error(double a, double b, double floor = 1e-300) {
    return std::abs(a - b) / std::max(std::abs(b), floor);
}

inline fea::NodalLoad load(int node, int dof, double value) {
    fea::NodalLoad l{node, {}};
    l.components[static_cast<std::size_t>(dof)] = value;
    return l;
}

/// Straight bar along +X from the origin, clamped at node 1 and loaded at node 2.
inline fea::StructuralModel axial_bar(double length, double axial_load_kN) {
    const auto s = fea::SectionMaterial::reference();
    return fea::StructuralModel({{1, fea::Vec3(0, 0, 0)}, {2, fea::Vec3(length, 0, 0)}}, {{1, 1, 2, s}},
                                {fea::Support::fixed_all(1)}, {load(2, 0, axial_load_kN)});
}

/// Random connected frame: a chain through every node plus random chords.
/// Node 1 is clamped and every other node carries a random load.
inline fea::StructuralModel random_frame(Gen& gen, int nodes, int elements) {
    const auto s = fea::SectionMaterial::reference();
    std::vector<fea::NodeRecord> ns;
    for (int i = 0; i < nodes; ++i) {
        // Spread along X so every chain link has a sensible length.
        ns.push_back({i + 1, fea::Vec3(1.0 * i + gen.uniform(-0.2, 0.2), gen.uniform(-1, 1), gen.uniform(0, 1))});
    }
    std::vector<fea::BeamColumn> es;
    for (int i = 1; i < nodes && static_cast<int>(es.size()) < elements; ++i) {
        es.push_back({static_cast<int>(es.size()) + 1, i, i + 1, s});
    }
    while (static_cast<int>(es.size()) < elements) {
        const int a = gen.integer(1, nodes);
        const int b = gen.integer(1, nodes);
        if (a != b) es.push_back({static_cast<int>(es.size()) + 1, a, b, s});
    }
    std::vector<fea::NodalLoad> ls;
    for (int i = 2; i <= nodes; ++i) {
        fea::NodalLoad l{i, {}};
        for (int k = 0; k < 3; ++k) l.components[static_cast<std::size_t>(k)] = gen.uniform(-10, 10);
        ls.push_back(l);
    }
    return fea::StructuralModel(std::move(ns), std::move(es), {fea::Support::fixed_all(1)}, std::move(ls));
}

}  // namespace shapeopt::fixtures
