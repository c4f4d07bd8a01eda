#include "shapeopt/optim/bfgs.hpp"

#include "shapeopt/errors.hpp"
#include "shapeopt/log.hpp"

namespace shapeopt::optim {

namespace {
constexpr double kDampingThreshold = 0.2;
}

BfgsUpdate bfgs_update(const Eigen::MatrixXd& B, const Eigen::VectorXd& s, const Eigen::VectorXd& y) {
    if (B.rows() != B.cols() || B.rows() != s.size() || s.size() != y.size()) {
        throw ValidationError("bfgs_update: dimension mismatch");
    }
    BfgsUpdate out{B, false, false};
    if (s.squaredNorm() == 0.0) {
        log_warning("BFGS update skipped: zero step");
        out.skipped = true;
        return out;
    }
    const Eigen::VectorXd Bs = B * s;
    const double sBs = s.dot(Bs);
    const double sy = s.dot(y);
    Eigen::VectorXd r = y;
    if (sy < kDampingThreshold * sBs) {
        const double theta = (1.0 - kDampingThreshold) * sBs / (sBs - sy);
        r = theta * y + (1.0 - theta) * Bs;
        out.damped = true;
    }
    const double sr = s.dot(r);
    if (!(sBs > 0.0) || !(sr > 0.0)) {
        log_warning("BFGS update skipped: curvature information is degenerate");
        out.skipped = true;
        return out;
    }
    out.B = B - (Bs * Bs.transpose()) / sBs + (r * r.transpose()) / sr;
    out.B = 0.5 * (out.B + out.B.transpose()).eval();
    return out;
}

}  // namespace shapeopt::optim
