#include "shapeopt/optim/convergence.hpp"

#include <cmath>

namespace shapeopt::optim {

Convergence check_convergence(const std::vector<IterationRecord>& history, const OptimConfig& config) {
    if (history.empty()) return Convergence::Continue;
    const IterationRecord& last = history.back();
    if (history.size() >= 2) {
        const double change = std::abs(last.compliance - history[history.size() - 2].compliance);
        if (change < config.tolerance) return Convergence::StopTolerance;
    }
    if (last.k >= config.max_iterations) return Convergence::StopMaxIterations;
    return Convergence::Continue;
}

}  // namespace shapeopt::optim
