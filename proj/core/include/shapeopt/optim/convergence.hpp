#pragma once

#include <vector>

#include "shapeopt/optim/types.hpp"

namespace shapeopt::optim {

enum class Convergence { Continue, StopTolerance, StopMaxIterations };

/// Loop guard: stop once |C_k - C_{k-1}| < tolerance or k reaches max_iterations.
Convergence check_convergence(const std::vector<IterationRecord>& history, const OptimConfig& config);

}  // namespace shapeopt::optim
