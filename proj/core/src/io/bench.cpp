#include "shapeopt/io/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "shapeopt/errors.hpp"
#include "shapeopt/io/run.hpp"
#include "shapeopt/param/cases.hpp"
#include "shapeopt/parallel.hpp"
#include "shapeopt/sensitivity/adjoint.hpp"
#include "shapeopt/sensitivity/structural_problem.hpp"

namespace shapeopt::io {

namespace {

constexpr int kRowWidth = 16;
constexpr double kSpacing = 1.0;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <class Fn>
double seconds(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

BenchFrame make_bench_frame(std::size_t elements, std::uint64_t seed, std::size_t max_design) {
    if (elements == 0) throw ValidationError("benchmark frames need at least one element");

    // Lattice edges in the order: horizontals of row 0, verticals 0->1,
    // horizontals of row 1, verticals 1->2, ... Every prefix is connected to row 0.
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> edges;
    for (int row = 0; edges.size() < elements; ++row) {
        for (int i = 0; i + 1 < kRowWidth && edges.size() < elements; ++i) edges.push_back({{i, row}, {i + 1, row}});
        for (int i = 0; i < kRowWidth && edges.size() < elements; ++i) edges.push_back({{i, row}, {i, row + 1}});
    }

    param::SeededUniform rng(seed);
    std::map<std::pair<int, int>, int> ids;
    std::vector<fea::NodeRecord> nodes;
    const auto node_id = [&](std::pair<int, int> key) {
        const auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        const int id = static_cast<int>(nodes.size()) + 1;
        ids.emplace(key, id);
        const double x = kSpacing * (key.first + 0.2 * (rng.next() - 0.5));
        const double y = kSpacing * (key.second + 0.2 * (rng.next() - 0.5));
        const double z = 0.5 * rng.next();
        nodes.push_back({id, fea::Vec3(x, y, z)});
        return id;
    };

    const fea::SectionMaterial section = fea::SectionMaterial::reference();
    std::vector<fea::BeamColumn> members;
    members.reserve(elements);
    for (const auto& [a, b] : edges) {
        const int ia = node_id(a);
        const int ib = node_id(b);
        members.push_back({static_cast<int>(members.size()) + 1, ia, ib, section});
    }

    std::vector<fea::Support> supports;
    std::vector<fea::NodalLoad> loads;
    std::vector<int> design;
    for (const auto& [key, id] : ids) {
        if (key.second == 0 && key.first % 4 == 0) {
            supports.push_back(fea::Support::fixed_all(id));
        } else {
            fea::NodalLoad load{id, {}};
            load.components[2] = -10.0;
            loads.push_back(load);
        }
    }
    // Design variables in node-id order for a stable layout.
    for (const auto& n : nodes) {
        if (design.size() >= max_design) break;
        const bool clamped = std::any_of(supports.begin(), supports.end(), [&](const auto& s) { return s.node == n.id; });
        if (!clamped) design.push_back(n.id);
    }
    return {fea::StructuralModel(std::move(nodes), std::move(members), std::move(supports), std::move(loads)),
            param::DesignMap::direct_z(std::move(design))};
}

std::vector<BenchRow> bench_sensitivity(const std::vector<std::size_t>& element_counts, int repeats,
                                        std::uint64_t seed) {
    if (repeats < 1) throw ValidationError("repeats must be at least 1");
    std::vector<BenchRow> rows;
    for (const std::size_t count : element_counts) {
        if (count < 1) throw ValidationError("element counts must be at least 1");
        const BenchFrame frame = make_bench_frame(count, seed);
        const fea::SolveResult solve = fea::analyze(frame.model);
        const sens::StructuralProblem problem(frame.model, frame.design, 1);
        const Eigen::VectorXd x = frame.design.current_x(frame.model);

        std::vector<double> seq;
        std::vector<double> par;
        std::vector<double> fd;
        for (int r = 0; r < repeats; ++r) {
            seq.push_back(seconds([&] { sens::nodal_coordinate_gradient(frame.model, solve, 1); }));
            par.push_back(seconds([&] { sens::nodal_coordinate_gradient(frame.model, solve, default_workers()); }));
            fd.push_back(seconds([&] { sens::finite_difference_gradient(problem, x, 1e-6, 1); }));
        }
        rows.push_back({count, frame.model.node_count(), frame.design.size(), median(seq), median(par), median(fd)});
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "elements,nodes,design_vars,sequential_s,parallel_s,finite_difference_s\n";
    for (const auto& r : rows) {
        out += std::to_string(r.elements) + "," + std::to_string(r.nodes) + "," + std::to_string(r.design_vars) + "," +
               format_double(r.sequential_s) + "," + format_double(r.parallel_s) + "," +
               format_double(r.finite_difference_s) + "\n";
    }
    return out;
}

}  // namespace shapeopt::io
