#pragma once

#include <Eigen/Core>

namespace shapeopt::optim {

struct BfgsUpdate {
    Eigen::MatrixXd B;
    bool damped{false};
    bool skipped{false};
};

/// Powell-damped BFGS: when s^T y < 0.2 s^T B s, y is replaced by
/// r = theta y + (1 - theta) B s with theta = 0.8 s^T B s / (s^T B s - s^T y),
/// which keeps B positive definite. s = 0 skips the update with a warning.
BfgsUpdate bfgs_update(const Eigen::MatrixXd& B, const Eigen::VectorXd& s, const Eigen::VectorXd& y);

}  // namespace shapeopt::optim
