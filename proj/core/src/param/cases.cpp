#include "shapeopt/param/cases.hpp"

#include <map>
#include <utility>

#include "shapeopt/errors.hpp"

namespace shapeopt::param {

using fea::BeamColumn;
using fea::NodalLoad;
using fea::NodeRecord;
using fea::SectionMaterial;
using fea::StructuralModel;
using fea::Support;

double SeededUniform::next() {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

const std::vector<std::string>& builtin_case_ids() {
    static const std::vector<std::string> ids{"arch2d", "barrel", "mannheim", "fourpoint", "twoedge", "carioca"};
    return ids;
}

namespace {

SectionMaterial case_section(const CaseOptions& options) {
    SectionMaterial s = SectionMaterial::reference();
    if (options.reduced_bending) {
        s = SectionMaterial::with_polar_torsion(s.E, s.G, 0.1 * s.Iy, 0.1 * s.Iz, s.A);
    }
    return s;
}

NodalLoad downward(int node, double magnitude_kN) {
    NodalLoad l{node, {}};
    l.components[2] = -magnitude_kN;
    return l;
}

// Rectangular node grid with members on every horizontal and vertical grid edge.
// Node (i, j) sits at (x0 + i*dx, y0 + j*dy) and has id j*nx + i + 1.
struct Grid {
    int nx;
    int ny;
    double lx;
    double ly;

    int id(int i, int j) const { return j * nx + i + 1; }
    double x(int i) const { return lx * i / (nx - 1); }
    double y(int j) const { return ly * j / (ny - 1); }

    std::vector<NodeRecord> nodes() const {
        std::vector<NodeRecord> out;
        out.reserve(static_cast<std::size_t>(nx * ny));
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) out.push_back({id(i, j), fea::Vec3(x(i), y(j), 0.0)});
        return out;
    }

    std::vector<BeamColumn> members(const SectionMaterial& section) const {
        std::vector<BeamColumn> out;
        int tag = 1;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i + 1 < nx; ++i) out.push_back({tag++, id(i, j), id(i + 1, j), section});
        for (int j = 0; j + 1 < ny; ++j)
            for (int i = 0; i < nx; ++i) out.push_back({tag++, id(i, j), id(i, j + 1), section});
        return out;
    }
};

GeneratedCase arch2d(std::uint64_t seed, const CaseOptions& options) {
    constexpr int n = 21;
    const auto section = case_section(options);
    SeededUniform rng(seed);

    std::vector<NodeRecord> nodes;
    std::vector<BeamColumn> elements;
    std::vector<Support> supports;
    std::vector<NodalLoad> loads;
    std::vector<int> design;
    for (int i = 0; i < n; ++i) {
        const int id = i + 1;
        const bool end = i == 0 || i == n - 1;
        const double z = end ? 0.0 : 0.5 * rng.next();
        nodes.push_back({id, fea::Vec3(0.5 * i, 0.0, z)});
        // Planar problem in X-Z: out-of-plane translation and rotations about X and Z are held everywhere.
        Support s{id, {false, true, false, true, false, true}};
        if (end) s.fixed[0] = s.fixed[2] = true;
        supports.push_back(s);
        if (!end) {
            design.push_back(id);
            loads.push_back(downward(id, 10.0));
        }
        if (i + 1 < n) elements.push_back({i + 1, id, id + 1, section});
    }
    return {"arch2d", StructuralModel(std::move(nodes), std::move(elements), std::move(supports), std::move(loads)),
            DesignMap::direct_z(std::move(design))};
}

GeneratedCase barrel(std::uint64_t seed, const CaseOptions& options) {
    const Grid g{15, 15, 5.0, 5.0};
    SeededUniform rng(seed);
    auto nodes = g.nodes();
    std::vector<Support> supports;
    std::vector<NodalLoad> loads;
    std::vector<int> design;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int id = g.id(i, j);
            if (i == 0 || i == g.nx - 1) {
                supports.push_back(Support::pinned(id));
            } else {
                nodes[static_cast<std::size_t>(id - 1)].position.z() = 0.5 * rng.next();
                design.push_back(id);
                loads.push_back(downward(id, 10.0));
            }
        }
    }
    return {"barrel",
            StructuralModel(std::move(nodes), g.members(case_section(options)), std::move(supports), std::move(loads)),
            DesignMap::direct_z(std::move(design))};
}

// Exhibition hall: a 19 x 15 cell block with a 9-cell-wide, 6-cell-deep entrance
// corridor centred on each short side. The plan is 60 m wide (X) and 80 m long (Y)
// overall. Cells are split along alternating diagonals except five cells in each
// corridor's entrance row, which stay quadrilateral.
GeneratedCase mannheim(const CaseOptions& options) {
    constexpr int cells_x = 19;
    constexpr int hall_j0 = 6;
    constexpr int hall_j1 = 21;  // hall occupies cell rows [6, 21)
    constexpr int rows = 27;
    constexpr int corridor_i0 = 5;
    constexpr int corridor_i1 = 14;  // corridor occupies cell columns [5, 14)
    const double dx = 60.0 / cells_x;
    const double dy = 80.0 / rows;
    const auto section = case_section(options);

    const auto cell_exists = [&](int i, int j) {
        if (j < 0 || j >= rows || i < 0 || i >= cells_x) return false;
        if (j >= hall_j0 && j < hall_j1) return true;
        return i >= corridor_i0 && i < corridor_i1;
    };
    const auto node_exists = [&](int i, int j) {
        return cell_exists(i, j) || cell_exists(i - 1, j) || cell_exists(i, j - 1) || cell_exists(i - 1, j - 1);
    };
    const auto on_boundary = [&](int i, int j) {
        return !(cell_exists(i, j) && cell_exists(i - 1, j) && cell_exists(i, j - 1) && cell_exists(i - 1, j - 1));
    };

    std::map<std::pair<int, int>, int> ids;
    std::vector<NodeRecord> nodes;
    std::vector<Support> supports;
    std::vector<NodalLoad> loads;
    std::vector<int> design;
    for (int j = 0; j <= rows; ++j) {
        for (int i = 0; i <= cells_x; ++i) {
            if (!node_exists(i, j)) continue;
            const int id = static_cast<int>(nodes.size()) + 1;
            ids[{i, j}] = id;
            const bool edge = on_boundary(i, j);
            nodes.push_back({id, fea::Vec3(i * dx, j * dy, edge ? 0.0 : 0.5)});
            loads.push_back(downward(id, 100.0));
            if (edge) {
                supports.push_back(Support::pinned(id));
            } else {
                design.push_back(id);
            }
        }
    }

    std::vector<BeamColumn> elements;
    int tag = 1;
    const auto add = [&](int ia, int ja, int ib, int jb) {
        elements.push_back({tag++, ids.at({ia, ja}), ids.at({ib, jb}), section});
    };
    for (int j = 0; j <= rows; ++j) {
        for (int i = 0; i < cells_x; ++i) {
            if (cell_exists(i, j) || cell_exists(i, j - 1)) add(i, j, i + 1, j);
        }
    }
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i <= cells_x; ++i) {
            if (cell_exists(i, j) || cell_exists(i - 1, j)) add(i, j, i, j + 1);
        }
    }
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < cells_x; ++i) {
            if (!cell_exists(i, j)) continue;
            const bool entrance_row = j == 0 || j == rows - 1;
            if (entrance_row && (i - corridor_i0) % 2 == 0) continue;
            if ((i + j) % 2 == 0) {
                add(i, j, i + 1, j + 1);
            } else {
                add(i + 1, j, i, j + 1);
            }
        }
    }
    return {"mannheim", StructuralModel(std::move(nodes), std::move(elements), std::move(supports), std::move(loads)),
            DesignMap::direct_z(std::move(design))};
}

// 16 x 16 node gridshell over 5 m x 5 m driven by a degree-5 Bezier surface whose
// boundary control points sit at Z = 0 and interior ones at Z = 1.
GeneratedCase gridshell(const std::string& id, bool two_edge, const CaseOptions& options) {
    const Grid g{16, 16, 5.0, 5.0};
    constexpr int degree = 5;
    BezierSurfaceDef surface = make_plan_grid_surface(degree, degree, 0.0, 0.0, g.lx, g.ly);
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; j <= degree; ++j) {
            const bool edge = i == 0 || j == 0 || i == degree || j == degree;
            surface.control(i, j).z() = edge ? 0.0 : 1.0;
        }
    }

    std::vector<ControlRef> controls;
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; j <= degree; ++j) {
            if (two_edge) {
                if (i >= 1 && j >= 1) controls.push_back({i, j});
            } else {
                const bool corner = (i == 0 || i == degree) && (j == 0 || j == degree);
                if (!corner) controls.push_back({i, j});
            }
        }
    }

    std::vector<NodeParam> params;
    std::vector<Support> supports;
    std::vector<NodalLoad> loads;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int nid = g.id(i, j);
            params.push_back({nid, static_cast<double>(i) / (g.nx - 1), static_cast<double>(j) / (g.ny - 1)});
            loads.push_back(downward(nid, 500.0));
            const bool corner = (i == 0 || i == g.nx - 1) && (j == 0 || j == g.ny - 1);
            const bool support = two_edge ? (i == 0 || j == 0) : corner;
            if (support) supports.push_back(Support::pinned(nid));
        }
    }

    auto map = DesignMap::bezier_z(std::move(surface), std::move(params), std::move(controls));
    StructuralModel flat(g.nodes(), g.members(case_section(options)), std::move(supports), std::move(loads));
    auto model = map_design_to_model(flat, map, map.current_x(flat));
    return {id, std::move(model), std::move(map)};
}

// 50 m x 25 m canopy on a 21 x 11 node grid, degree-9 Bezier surface. The control
// row at Y = 0 sits at Z = 0 and the row at Y = 25 at Z = -6; all others start at
// Z = 10. Every node on the two long edges is pinned.
GeneratedCase carioca(const CaseOptions& options) {
    const Grid g{21, 11, 50.0, 25.0};
    constexpr int degree = 9;
    BezierSurfaceDef surface = make_plan_grid_surface(degree, degree, 0.0, 0.0, g.lx, g.ly);
    std::vector<ControlRef> controls;
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; j <= degree; ++j) {
            double z = 10.0;
            if (j == 0) {
                z = 0.0;
            } else if (j == degree) {
                z = -6.0;
            } else {
                controls.push_back({i, j});
            }
            surface.control(i, j).z() = z;
        }
    }

    std::vector<NodeParam> params;
    std::vector<Support> supports;
    std::vector<NodalLoad> loads;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int nid = g.id(i, j);
            params.push_back({nid, static_cast<double>(i) / (g.nx - 1), static_cast<double>(j) / (g.ny - 1)});
            loads.push_back(downward(nid, 100.0));
            if (j == 0 || j == g.ny - 1) supports.push_back(Support::pinned(nid));
        }
    }

    auto map = DesignMap::bezier_z(std::move(surface), std::move(params), std::move(controls));
    StructuralModel flat(g.nodes(), g.members(case_section(options)), std::move(supports), std::move(loads));
    auto model = map_design_to_model(flat, map, map.current_x(flat));
    return {"carioca", std::move(model), std::move(map)};
}

}  // namespace

GeneratedCase generate_case_mesh(const std::string& case_id, std::uint64_t seed, const CaseOptions& options) {
    if (case_id == "arch2d") return arch2d(seed, options);
    if (case_id == "barrel") return barrel(seed, options);
    if (case_id == "mannheim") return mannheim(options);
    if (case_id == "fourpoint") return gridshell("fourpoint", false, options);
    if (case_id == "twoedge") return gridshell("twoedge", true, options);
    if (case_id == "carioca") return carioca(options);
    throw ValidationError("unknown case id '" + case_id + "'");
}

}  // namespace shapeopt::param
