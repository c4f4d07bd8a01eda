#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapeopt/fea/model.hpp"
#include "shapeopt/param/design_map.hpp"

namespace shapeopt::param {

/// Built-in form-finding cases.
const std::vector<std::string>& builtin_case_ids();

struct CaseOptions {
    /// Scale Iy and Iz by 0.1 (torsion constant follows the Iy + Iz rule).
    bool reduced_bending{false};
};

struct GeneratedCase {
    std::string id;
    fea::StructuralModel model;
    DesignMap design;
};

/// Deterministic mesh, supports, loads and design map for a built-in case.
/// The seed drives the random initial heights of arch2d and barrel only.
GeneratedCase generate_case_mesh(const std::string& case_id, std::uint64_t seed, const CaseOptions& options = {});

/// Uniform double in [0, 1) from a splitmix64 stream; identical on every platform.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : state_(seed) {}
    double next();

private:
    std::uint64_t state_;
};

}  // namespace shapeopt::param
