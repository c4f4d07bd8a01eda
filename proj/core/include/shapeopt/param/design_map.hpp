#pragma once

#include <vector>

#include <Eigen/Core>

#include "shapeopt/fea/model.hpp"
#include "shapeopt/param/bezier.hpp"

namespace shapeopt::param {

enum class DesignMode { DirectZ, BezierZ };

/// Parametric coordinates of a mesh node on the Bezier surface.
struct NodeParam {
    int node{0};
    double u{0.0};
    double v{0.0};

    friend bool operator==(const NodeParam&, const NodeParam&) = default;
};

struct ControlRef {
    int i{0};
    int j{0};

    friend bool operator==(const ControlRef&, const ControlRef&) = default;
};

/// Maps the design vector x to nodal Z coordinates.
///
/// DirectZ: design variable k is the Z coordinate of design_nodes()[k].
/// BezierZ: design variable k is the Z coordinate of control point
/// design_controls()[k]; every node listed in node_params() takes its Z from
/// the surface. X and Y never change.
class DesignMap {
public:
    DesignMap() = default;

    static DesignMap direct_z(std::vector<int> design_nodes);
    static DesignMap bezier_z(BezierSurfaceDef surface, std::vector<NodeParam> node_params,
                              std::vector<ControlRef> design_controls);

    DesignMode mode() const { return mode_; }
    std::size_t size() const;

    const std::vector<int>& design_nodes() const { return design_nodes_; }
    const BezierSurfaceDef& surface() const { return surface_; }
    const std::vector<NodeParam>& node_params() const { return node_params_; }
    const std::vector<ControlRef>& design_controls() const { return design_controls_; }

    /// Node ids whose Z the map drives: the design nodes (DirectZ) or the
    /// parameterised nodes (BezierZ), in the row order used by gradients.
    std::vector<int> mapped_nodes() const;

    /// Throws ValidationError unless every referenced node / control point exists.
    void validate(const fea::StructuralModel& model) const;

    /// Design vector read back from the model (DirectZ) or the control net (BezierZ).
    Eigen::VectorXd current_x(const fea::StructuralModel& model) const;

    /// Control net with the design control heights replaced by x.
    BezierSurfaceDef surface_at(const Eigen::VectorXd& x) const;

    friend bool operator==(const DesignMap&, const DesignMap&) = default;

private:
    DesignMode mode_{DesignMode::DirectZ};
    std::vector<int> design_nodes_;
    BezierSurfaceDef surface_;
    std::vector<NodeParam> node_params_;
    std::vector<ControlRef> design_controls_;
};

/// W[r, c] = B_i^n(u_r) B_j^m(v_r) for mapped node r and every control point c
/// (control_index order). Rows sum to one.
Eigen::MatrixXd bezier_weight_matrix_all(const DesignMap& map);

/// Columns of the full weight matrix that belong to design variables, so that
/// W[r, k] = d z(node r) / d x_k. Throws for DirectZ maps.
Eigen::MatrixXd bezier_weight_matrix(const DesignMap& map);

/// Model with the mapped nodes' Z set from x.
fea::StructuralModel map_design_to_model(const fea::StructuralModel& model, const DesignMap& map,
                                         const Eigen::VectorXd& x);

/// Pulls a gradient over the mapped nodes' Z back to the design variables
/// (W^T g for BezierZ, identity for DirectZ).
Eigen::VectorXd chain_rule_gradient(const Eigen::VectorXd& nodal_z_gradient, const DesignMap& map);

}  // namespace shapeopt::param
