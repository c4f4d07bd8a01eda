#include "shapeopt/fea/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "shapeopt/errors.hpp"

namespace shapeopt::fea {

SectionMaterial SectionMaterial::reference() {
    // Moduli given in MPa, stored in kN/m^2.
    return with_polar_torsion(37900.0 * 1e3, 14577.0 * 1e3, 0.0072, 0.0032, 0.24);
}

SectionMaterial SectionMaterial::with_polar_torsion(double E, double G, double Iy, double Iz, double A) {
    return SectionMaterial{E, G, Iy, Iz, Iy + Iz, A};
}

void SectionMaterial::validate() const {
    const auto check = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError(std::string("section property ") + name + " must be positive and finite");
        }
    };
    check(E, "E");
    check(G, "G");
    check(Iy, "Iy");
    check(Iz, "Iz");
    check(J, "J");
    check(A, "A");
}

std::string dof_name(int local_dof) {
    static constexpr const char* names[] = {"UX", "UY", "UZ", "RX", "RY", "RZ"};
    if (local_dof < 0 || local_dof >= kDofsPerNode) return "?";
    return names[local_dof];
}

StructuralModel::StructuralModel(std::vector<NodeRecord> nodes, std::vector<BeamColumn> elements,
                                 std::vector<Support> supports, std::vector<NodalLoad> loads)
    : nodes_(std::move(nodes)), elements_(std::move(elements)), supports_(std::move(supports)),
      loads_(std::move(loads)) {
    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (!n.position.allFinite()) {
            throw ValidationError("node " + std::to_string(n.id) + " has a non-finite coordinate");
        }
        if (!index_.emplace(n.id, i).second) {
            throw ValidationError("duplicate node id " + std::to_string(n.id));
        }
    }

    element_nodes_.reserve(elements_.size());
    for (const auto& e : elements_) {
        const auto it_i = index_.find(e.node_i);
        const auto it_j = index_.find(e.node_j);
        if (it_i == index_.end() || it_j == index_.end()) {
            throw ValidationError("element " + std::to_string(e.tag) + " references a missing node");
        }
        if (e.node_i == e.node_j) {
            throw ValidationError("element " + std::to_string(e.tag) + " connects node " + std::to_string(e.node_i) +
                                  " to itself");
        }
        e.section.validate();
        element_nodes_.emplace_back(it_i->second, it_j->second);
    }

    fixed_.assign(static_cast<std::size_t>(dof_count()), false);
    for (const auto& s : supports_) {
        const auto it = index_.find(s.node);
        if (it == index_.end()) throw ValidationError("support on unknown node " + std::to_string(s.node));
        for (int k = 0; k < kDofsPerNode; ++k) {
            if (s.fixed[k]) fixed_[it->second * kDofsPerNode + k] = true;
        }
    }

    f_ = Eigen::VectorXd::Zero(dof_count());
    for (const auto& l : loads_) {
        const auto it = index_.find(l.node);
        if (it == index_.end()) throw ValidationError("load on unknown node " + std::to_string(l.node));
        for (int k = 0; k < kDofsPerNode; ++k) {
            if (!std::isfinite(l.components[k])) {
                throw ValidationError("load on node " + std::to_string(l.node) + " is not finite");
            }
            f_[static_cast<Eigen::Index>(it->second * kDofsPerNode + k)] += l.components[k];
        }
    }
}

std::size_t StructuralModel::index_of(int node_id) const {
    const auto it = index_.find(node_id);
    if (it == index_.end()) throw ValidationError("unknown node id " + std::to_string(node_id));
    return it->second;
}

ElementCoords StructuralModel::element_coords(std::size_t e) const {
    const auto [i, j] = element_nodes_[e];
    const Vec3& a = nodes_[i].position;
    const Vec3& b = nodes_[j].position;
    return {a.x(), a.y(), a.z(), b.x(), b.y(), b.z()};
}

StructuralModel StructuralModel::with_positions(std::span<const Vec3> positions) const {
    if (positions.size() != nodes_.size()) {
        throw ValidationError("with_positions: expected " + std::to_string(nodes_.size()) + " positions");
    }
    StructuralModel copy = *this;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!positions[i].allFinite()) {
            throw ValidationError("node " + std::to_string(nodes_[i].id) + " moved to a non-finite position");
        }
        copy.nodes_[i].position = positions[i];
    }
    return copy;
}

std::uint64_t StructuralModel::geometry_hash() const {
    // FNV-1a over the coordinate bit patterns.
    std::uint64_t h = 1469598103934665603ULL;
    const auto mix = [&h](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            h ^= (word >> (8 * b)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    mix(nodes_.size());
    for (const auto& n : nodes_) {
        for (int k = 0; k < 3; ++k) mix(std::bit_cast<std::uint64_t>(n.position[k]));
    }
    return h;
}

double StructuralModel::max_z() const {
    double z = -std::numeric_limits<double>::infinity();
    for (const auto& n : nodes_) z = std::max(z, n.position.z());
    return z;
}

}  // namespace shapeopt::fea
