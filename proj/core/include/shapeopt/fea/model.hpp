#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace shapeopt::fea {

using Vec3 = Eigen::Vector3d;

/// Six nodal coordinates of a two-node element, ordered (x1, y1, z1, x2, y2, z2).
using ElementCoords = std::array<double, 6>;

/// Fixity flags in DOF order UX, UY, UZ, RX, RY, RZ.
using DofFlags = std::array<bool, 6>;

inline constexpr int kDofsPerNode = 6;

/// Section and material data of a beam-column. Units: kN, m.
struct SectionMaterial {
    double E{0.0};   // kN/m^2
    double G{0.0};   // kN/m^2
    double Iy{0.0};  // m^4
    double Iz{0.0};  // m^4
    double J{0.0};   // m^4
    double A{0.0};   // m^2

    /// Reference member: E = 37900 MPa, G = 14577 MPa, Iy = 0.0072, Iz = 0.0032,
    /// A = 0.24, with J = Iy + Iz.
    static SectionMaterial reference();

    /// Builds a section with the torsion constant defaulted to Iy + Iz.
    static SectionMaterial with_polar_torsion(double E, double G, double Iy, double Iz, double A);

    void validate() const;

    friend bool operator==(const SectionMaterial&, const SectionMaterial&) = default;
};

struct NodeRecord {
    int id{0};
    Vec3 position{Vec3::Zero()};

    friend bool operator==(const NodeRecord& a, const NodeRecord& b) {
        return a.id == b.id && a.position == b.position;
    }
};

struct BeamColumn {
    int tag{0};
    int node_i{0};
    int node_j{0};
    SectionMaterial section{};

    friend bool operator==(const BeamColumn&, const BeamColumn&) = default;
};

struct Support {
    int node{0};
    DofFlags fixed{};

    static Support pinned(int node) { return {node, {true, true, true, false, false, false}}; }
    static Support fixed_all(int node) { return {node, {true, true, true, true, true, true}}; }

    friend bool operator==(const Support&, const Support&) = default;
};

/// Nodal force (kN) and moment (kN m) components in global axes.
struct NodalLoad {
    int node{0};
    std::array<double, 6> components{};

    friend bool operator==(const NodalLoad&, const NodalLoad&) = default;
};

/// Immutable description of a frame: nodes, beam-columns, supports and loads.
/// Node ids are user tags; internally nodes are addressed by their position
/// in nodes(), and global DOF 6*index + k belongs to node index.
class StructuralModel {
public:
    StructuralModel() = default;
    StructuralModel(std::vector<NodeRecord> nodes, std::vector<BeamColumn> elements, std::vector<Support> supports,
                    std::vector<NodalLoad> loads);

    const std::vector<NodeRecord>& nodes() const { return nodes_; }
    const std::vector<BeamColumn>& elements() const { return elements_; }
    const std::vector<Support>& supports() const { return supports_; }
    const std::vector<NodalLoad>& loads() const { return loads_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t element_count() const { return elements_.size(); }
    Eigen::Index dof_count() const { return static_cast<Eigen::Index>(nodes_.size()) * kDofsPerNode; }

    /// Index of a node id in nodes(); throws ValidationError when unknown.
    std::size_t index_of(int node_id) const;
    bool has_node(int node_id) const { return index_.count(node_id) != 0; }

    /// Node indices (not ids) of element e's end nodes.
    std::pair<std::size_t, std::size_t> element_nodes(std::size_t e) const { return element_nodes_[e]; }
    ElementCoords element_coords(std::size_t e) const;

    /// Generalized load vector f, length 6n.
    const Eigen::VectorXd& load_vector() const { return f_; }

    /// Fixed-DOF mask of length 6n.
    const std::vector<bool>& fixed_dofs() const { return fixed_; }

    /// Copy of the model with every node moved to the given positions (same order as nodes()).
    StructuralModel with_positions(std::span<const Vec3> positions) const;

    /// Content hash of the nodal coordinates; ties solve results to a geometry.
    std::uint64_t geometry_hash() const;

    double max_z() const;

private:
    std::vector<NodeRecord> nodes_;
    std::vector<BeamColumn> elements_;
    std::vector<Support> supports_;
    std::vector<NodalLoad> loads_;
    std::unordered_map<int, std::size_t> index_;
    std::vector<std::pair<std::size_t, std::size_t>> element_nodes_;
    std::vector<bool> fixed_;
    Eigen::VectorXd f_;
};

std::string dof_name(int local_dof);

}  // namespace shapeopt::fea
