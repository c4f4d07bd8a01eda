#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shapeopt/fea/model.hpp"
#include "shapeopt/param/design_map.hpp"

namespace shapeopt::io {

struct BenchFrame {
    fea::StructuralModel model;
    param::DesignMap design;
};

/// Seeded random frame with exactly `elements` members: grid edges of a
/// 16-node-wide lattice taken row by row, nodes jittered in plan and height.
/// Every fourth node of the first row is clamped; all other nodes carry a
/// downward load. Up to `max_design` free nodes get a Z design variable.
BenchFrame make_bench_frame(std::size_t elements, std::uint64_t seed, std::size_t max_design = 100);

struct BenchRow {
    std::size_t elements{0};
    std::size_t nodes{0};
    std::size_t design_vars{0};
    double sequential_s{0.0};
    double parallel_s{0.0};
    double finite_difference_s{0.0};
};

/// Median timings over `repeats` for each element count: sensitivity
/// assembly on one worker, on all workers, and one central-difference gradient.
std::vector<BenchRow> bench_sensitivity(const std::vector<std::size_t>& element_counts, int repeats,
                                        std::uint64_t seed = 7);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace shapeopt::io
