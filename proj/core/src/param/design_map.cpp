#include "shapeopt/param/design_map.hpp"

#include <set>
#include <string>
#include <utility>

#include "shapeopt/errors.hpp"

namespace shapeopt::param {

DesignMap DesignMap::direct_z(std::vector<int> design_nodes) {
    DesignMap m;
    m.mode_ = DesignMode::DirectZ;
    m.design_nodes_ = std::move(design_nodes);
    return m;
}

DesignMap DesignMap::bezier_z(BezierSurfaceDef surface, std::vector<NodeParam> node_params,
                              std::vector<ControlRef> design_controls) {
    surface.validate();
    DesignMap m;
    m.mode_ = DesignMode::BezierZ;
    m.surface_ = std::move(surface);
    m.node_params_ = std::move(node_params);
    m.design_controls_ = std::move(design_controls);
    return m;
}

std::size_t DesignMap::size() const {
    return mode_ == DesignMode::DirectZ ? design_nodes_.size() : design_controls_.size();
}

std::vector<int> DesignMap::mapped_nodes() const {
    if (mode_ == DesignMode::DirectZ) return design_nodes_;
    std::vector<int> ids;
    ids.reserve(node_params_.size());
    for (const auto& p : node_params_) ids.push_back(p.node);
    return ids;
}

void DesignMap::validate(const fea::StructuralModel& model) const {
    std::set<int> seen;
    for (int id : mapped_nodes()) {
        if (!model.has_node(id)) throw ValidationError("design map references unknown node " + std::to_string(id));
        if (!seen.insert(id).second) throw ValidationError("design map lists node " + std::to_string(id) + " twice");
    }
    if (mode_ == DesignMode::BezierZ) {
        surface_.validate();
        for (const auto& p : node_params_) {
            if (!(p.u >= 0.0 && p.u <= 1.0 && p.v >= 0.0 && p.v <= 1.0)) {
                throw ValidationError("node " + std::to_string(p.node) + " has parametric coordinates outside [0,1]^2");
            }
        }
        std::set<std::pair<int, int>> controls;
        for (const auto& c : design_controls_) {
            if (c.i < 0 || c.i > surface_.degree_u || c.j < 0 || c.j > surface_.degree_v) {
                throw ValidationError("design control (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                                      ") is not in the control net");
            }
            if (!controls.emplace(c.i, c.j).second) {
                throw ValidationError("design control (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                                      ") listed twice");
            }
        }
    }
}

Eigen::VectorXd DesignMap::current_x(const fea::StructuralModel& model) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(size()));
    if (mode_ == DesignMode::DirectZ) {
        for (std::size_t k = 0; k < design_nodes_.size(); ++k) {
            x[static_cast<Eigen::Index>(k)] = model.nodes()[model.index_of(design_nodes_[k])].position.z();
        }
    } else {
        for (std::size_t k = 0; k < design_controls_.size(); ++k) {
            x[static_cast<Eigen::Index>(k)] = surface_.control(design_controls_[k].i, design_controls_[k].j).z();
        }
    }
    return x;
}

BezierSurfaceDef DesignMap::surface_at(const Eigen::VectorXd& x) const {
    if (mode_ != DesignMode::BezierZ) throw ValidationError("surface_at: design map is not Bezier-based");
    if (static_cast<std::size_t>(x.size()) != size()) {
        throw ValidationError("surface_at: design vector has " + std::to_string(x.size()) + " entries, expected " +
                              std::to_string(size()));
    }
    BezierSurfaceDef s = surface_;
    for (std::size_t k = 0; k < design_controls_.size(); ++k) {
        s.control(design_controls_[k].i, design_controls_[k].j).z() = x[static_cast<Eigen::Index>(k)];
    }
    return s;
}

Eigen::MatrixXd bezier_weight_matrix_all(const DesignMap& map) {
    if (map.mode() != DesignMode::BezierZ) throw ValidationError("bezier_weight_matrix: design map is direct-Z");
    const auto& s = map.surface();
    Eigen::MatrixXd w(static_cast<Eigen::Index>(map.node_params().size()),
                      static_cast<Eigen::Index>(s.control_points.size()));
    for (std::size_t r = 0; r < map.node_params().size(); ++r) {
        const auto& p = map.node_params()[r];
        w.row(static_cast<Eigen::Index>(r)) = bezier_weights(s, p.u, p.v).transpose();
    }
    return w;
}

Eigen::MatrixXd bezier_weight_matrix(const DesignMap& map) {
    const Eigen::MatrixXd all = bezier_weight_matrix_all(map);
    Eigen::MatrixXd w(all.rows(), static_cast<Eigen::Index>(map.size()));
    for (std::size_t k = 0; k < map.design_controls().size(); ++k) {
        const auto& c = map.design_controls()[k];
        w.col(static_cast<Eigen::Index>(k)) = all.col(static_cast<Eigen::Index>(map.surface().control_index(c.i, c.j)));
    }
    return w;
}

fea::StructuralModel map_design_to_model(const fea::StructuralModel& model, const DesignMap& map,
                                         const Eigen::VectorXd& x) {
    if (static_cast<std::size_t>(x.size()) != map.size()) {
        throw ValidationError("map_design_to_model: design vector has " + std::to_string(x.size()) +
                              " entries, design map expects " + std::to_string(map.size()));
    }
    if (!x.allFinite()) throw ValidationError("map_design_to_model: design vector is not finite");

    std::vector<fea::Vec3> positions;
    positions.reserve(model.node_count());
    for (const auto& n : model.nodes()) positions.push_back(n.position);

    if (map.mode() == DesignMode::DirectZ) {
        for (std::size_t k = 0; k < map.design_nodes().size(); ++k) {
            positions[model.index_of(map.design_nodes()[k])].z() = x[static_cast<Eigen::Index>(k)];
        }
    } else {
        const BezierSurfaceDef s = map.surface_at(x);
        Eigen::VectorXd control_z(static_cast<Eigen::Index>(s.control_points.size()));
        for (std::size_t c = 0; c < s.control_points.size(); ++c) control_z[static_cast<Eigen::Index>(c)] = s.control_points[c].z();
        for (const auto& p : map.node_params()) {
            positions[model.index_of(p.node)].z() = bezier_weights(s, p.u, p.v).dot(control_z);
        }
    }
    return model.with_positions(positions);
}

Eigen::VectorXd chain_rule_gradient(const Eigen::VectorXd& nodal_z_gradient, const DesignMap& map) {
    const auto rows = static_cast<Eigen::Index>(map.mapped_nodes().size());
    if (nodal_z_gradient.size() != rows) {
        throw ValidationError("chain_rule_gradient: nodal gradient has " + std::to_string(nodal_z_gradient.size()) +
                              " entries, design map drives " + std::to_string(rows) + " nodes");
    }
    if (map.mode() == DesignMode::DirectZ) return nodal_z_gradient;
    return bezier_weight_matrix(map).transpose() * nodal_z_gradient;
}

}  // namespace shapeopt::param
