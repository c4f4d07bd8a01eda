#include "shapeopt/io/case_file.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "shapeopt/errors.hpp"

namespace shapeopt::io {

using nlohmann::json;

std::string to_string(SolverKind solver) { return solver == SolverKind::Sqp ? "sqp" : "gd"; }

SolverKind parse_solver(const std::string& name) {
    if (name == "gd") return SolverKind::GradientDescent;
    if (name == "sqp") return SolverKind::Sqp;
    throw ValidationError("unknown solver '" + name + "' (expected gd or sqp)");
}

namespace {

constexpr const char* kDofNames[fea::kDofsPerNode] = {"UX", "UY", "UZ", "RX", "RY", "RZ"};

json vector_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Eigen::VectorXd vector_from(const json& a, const char* what) {
    if (!a.is_array()) throw ValidationError(std::string(what) + " must be an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number()) throw ValidationError(std::string(what) + " must contain numbers");
        v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    }
    return v;
}

// Field access with a readable error naming the missing key.
const json& field(const json& j, const char* key, const char* context) {
    if (!j.is_object()) throw ValidationError(std::string(context) + " must be an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError(std::string(context) + " is missing '" + key + "'");
    return *it;
}

template <class T>
T get(const json& j, const char* key, const char* context) {
    try {
        return field(j, key, context).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string(context) + ": field '" + key + "' has the wrong type");
    }
}

json design_json(const DesignSpec& d) {
    json out;
    const auto& map = d.map;
    if (map.mode() == param::DesignMode::DirectZ) {
        out["mode"] = "direct_z";
        out["nodes"] = map.design_nodes();
    } else {
        out["mode"] = "bezier_z";
        const auto& s = map.surface();
        out["degree_u"] = s.degree_u;
        out["degree_v"] = s.degree_v;
        json cps = json::array();
        for (const auto& p : s.control_points) cps.push_back({p.x(), p.y(), p.z()});
        out["control_points_m"] = cps;
        json params = json::array();
        for (const auto& p : map.node_params()) params.push_back({{"node", p.node}, {"u", p.u}, {"v", p.v}});
        out["node_params"] = params;
        json controls = json::array();
        for (const auto& c : map.design_controls()) controls.push_back({c.i, c.j});
        out["design_controls"] = controls;
    }
    if (d.bounds) {
        out["bounds_m"] = {{"lower", vector_json(d.bounds->lower)}, {"upper", vector_json(d.bounds->upper)}};
    } else {
        out["bounds_m"] = nullptr;
    }
    out["initial_x_m"] = vector_json(d.initial_x);
    return out;
}

DesignSpec design_from(const json& j) {
    const char* ctx = "design";
    DesignSpec d;
    const auto mode = get<std::string>(j, "mode", ctx);
    if (mode == "direct_z") {
        d.map = param::DesignMap::direct_z(get<std::vector<int>>(j, "nodes", ctx));
    } else if (mode == "bezier_z") {
        param::BezierSurfaceDef s;
        s.degree_u = get<int>(j, "degree_u", ctx);
        s.degree_v = get<int>(j, "degree_v", ctx);
        for (const auto& p : field(j, "control_points_m", ctx)) {
            if (!p.is_array() || p.size() != 3) throw ValidationError("design: control points need three coordinates");
            s.control_points.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
        }
        std::vector<param::NodeParam> params;
        for (const auto& p : field(j, "node_params", ctx)) {
            params.push_back({get<int>(p, "node", "node_params"), get<double>(p, "u", "node_params"),
                              get<double>(p, "v", "node_params")});
        }
        std::vector<param::ControlRef> controls;
        for (const auto& c : field(j, "design_controls", ctx)) {
            if (!c.is_array() || c.size() != 2) throw ValidationError("design: design_controls entries are [i, j] pairs");
            controls.push_back({c[0].get<int>(), c[1].get<int>()});
        }
        d.map = param::DesignMap::bezier_z(std::move(s), std::move(params), std::move(controls));
    } else {
        throw ValidationError("design: unknown mode '" + mode + "' (expected direct_z or bezier_z)");
    }
    const json& b = field(j, "bounds_m", ctx);
    if (!b.is_null()) {
        d.bounds = Bounds{vector_from(field(b, "lower", "bounds_m"), "bounds_m.lower"),
                          vector_from(field(b, "upper", "bounds_m"), "bounds_m.upper")};
    }
    d.initial_x = vector_from(field(j, "initial_x_m", ctx), "initial_x_m");
    return d;
}

json optimizer_json(const OptimizerSpec& o) {
    return {{"solver", to_string(o.solver)},
            {"max_iterations", o.max_iterations},
            {"tolerance_kNm", o.tolerance},
            {"step", o.step},
            {"line_search", o.line_search},
            {"line_search_params",
             {{"initial_step", o.line_search_params.initial_step},
              {"shrink", o.line_search_params.shrink},
              {"armijo", o.line_search_params.armijo},
              {"max_shrinks", o.line_search_params.max_shrinks}}},
            {"checkpoint_every", o.checkpoint_every}};
}

OptimizerSpec optimizer_from(const json& j) {
    const char* ctx = "optimizer";
    OptimizerSpec o;
    o.solver = parse_solver(get<std::string>(j, "solver", ctx));
    o.max_iterations = get<int>(j, "max_iterations", ctx);
    o.tolerance = get<double>(j, "tolerance_kNm", ctx);
    o.step = get<double>(j, "step", ctx);
    o.line_search = get<bool>(j, "line_search", ctx);
    const json& ls = field(j, "line_search_params", ctx);
    o.line_search_params.initial_step = get<double>(ls, "initial_step", "line_search_params");
    o.line_search_params.shrink = get<double>(ls, "shrink", "line_search_params");
    o.line_search_params.armijo = get<double>(ls, "armijo", "line_search_params");
    o.line_search_params.max_shrinks = get<int>(ls, "max_shrinks", "line_search_params");
    o.checkpoint_every = get<int>(j, "checkpoint_every", ctx);
    return o;
}

}  // namespace

fea::StructuralModel CaseSpec::build_model() const {
    std::map<std::string, fea::SectionMaterial> by_name;
    for (const auto& s : sections) {
        if (!by_name.emplace(s.name, s.section).second) throw ValidationError("duplicate section name '" + s.name + "'");
    }
    std::vector<fea::BeamColumn> members;
    members.reserve(elements.size());
    for (const auto& e : elements) {
        const auto it = by_name.find(e.section);
        if (it == by_name.end()) {
            throw ValidationError("element " + std::to_string(e.tag) + " uses unknown section '" + e.section + "'");
        }
        members.push_back({e.tag, e.node_i, e.node_j, it->second});
    }
    return fea::StructuralModel(nodes, std::move(members), supports, loads);
}

void CaseSpec::validate() const {
    if (schema_version != kSchemaVersion) {
        throw ValidationError("unsupported schema_version " + std::to_string(schema_version));
    }
    const fea::StructuralModel model = build_model();
    design.map.validate(model);
    const auto n = static_cast<Eigen::Index>(design.map.size());
    if (n == 0) throw ValidationError("design block defines no design variables");
    if (design.initial_x.size() != n) {
        throw ValidationError("initial_x_m has " + std::to_string(design.initial_x.size()) + " entries, design has " +
                              std::to_string(n) + " variables");
    }
    if (!design.initial_x.allFinite()) throw ValidationError("initial_x_m must be finite");
    if (design.bounds) {
        optim::ConstraintSet::box(design.bounds->lower, design.bounds->upper).validate(static_cast<std::size_t>(n));
    }
    optim::OptimConfig cfg;
    cfg.max_iterations = optimizer.max_iterations;
    cfg.tolerance = optimizer.tolerance;
    cfg.step = optimizer.step;
    cfg.line_search = optimizer.line_search;
    cfg.line_search_params = optimizer.line_search_params;
    cfg.validate();
    optimizer.line_search_params.validate();
    if (optimizer.checkpoint_every < 0) throw ValidationError("checkpoint_every must be non-negative");
}

json to_json(const CaseSpec& spec) {
    json j;
    j["schema_version"] = spec.schema_version;
    j["case_id"] = spec.case_id;
    j["seed"] = spec.seed;
    json sections = json::array();
    for (const auto& s : spec.sections) {
        sections.push_back({{"name", s.name},
                            {"E_kN_per_m2", s.section.E},
                            {"G_kN_per_m2", s.section.G},
                            {"Iy_m4", s.section.Iy},
                            {"Iz_m4", s.section.Iz},
                            {"J_m4", s.section.J},
                            {"A_m2", s.section.A}});
    }
    j["sections"] = sections;
    json nodes = json::array();
    for (const auto& n : spec.nodes) {
        nodes.push_back({{"id", n.id}, {"x_m", n.position.x()}, {"y_m", n.position.y()}, {"z_m", n.position.z()}});
    }
    j["nodes"] = nodes;
    json elements = json::array();
    for (const auto& e : spec.elements) {
        elements.push_back({{"tag", e.tag}, {"node_i", e.node_i}, {"node_j", e.node_j}, {"section", e.section}});
    }
    j["elements"] = elements;
    json supports = json::array();
    for (const auto& s : spec.supports) {
        json fixed = json::array();
        for (int k = 0; k < fea::kDofsPerNode; ++k) {
            if (s.fixed[static_cast<std::size_t>(k)]) fixed.push_back(kDofNames[k]);
        }
        supports.push_back({{"node", s.node}, {"fixed", fixed}});
    }
    j["supports"] = supports;
    json loads = json::array();
    for (const auto& l : spec.loads) {
        const auto& c = l.components;
        loads.push_back({{"node", l.node}, {"F_kN", {c[0], c[1], c[2]}}, {"M_kNm", {c[3], c[4], c[5]}}});
    }
    j["loads"] = loads;
    j["design"] = design_json(spec.design);
    j["optimizer"] = optimizer_json(spec.optimizer);
    return j;
}

CaseSpec case_from_json(const json& j) {
    const char* ctx = "case";
    CaseSpec spec;
    try {
        spec.schema_version = get<int>(j, "schema_version", ctx);
        if (spec.schema_version != kSchemaVersion) {
            throw ValidationError("unsupported schema_version " + std::to_string(spec.schema_version));
        }
        spec.case_id = get<std::string>(j, "case_id", ctx);
        spec.seed = get<std::uint64_t>(j, "seed", ctx);
        for (const auto& s : field(j, "sections", ctx)) {
            const char* c = "section";
            spec.sections.push_back({get<std::string>(s, "name", c),
                                     {get<double>(s, "E_kN_per_m2", c), get<double>(s, "G_kN_per_m2", c),
                                      get<double>(s, "Iy_m4", c), get<double>(s, "Iz_m4", c),
                                      get<double>(s, "J_m4", c), get<double>(s, "A_m2", c)}});
        }
        for (const auto& n : field(j, "nodes", ctx)) {
            const char* c = "node";
            spec.nodes.push_back({get<int>(n, "id", c),
                                  fea::Vec3(get<double>(n, "x_m", c), get<double>(n, "y_m", c), get<double>(n, "z_m", c))});
        }
        for (const auto& e : field(j, "elements", ctx)) {
            const char* c = "element";
            spec.elements.push_back({get<int>(e, "tag", c), get<int>(e, "node_i", c), get<int>(e, "node_j", c),
                                     get<std::string>(e, "section", c)});
        }
        for (const auto& s : field(j, "supports", ctx)) {
            fea::Support sup{get<int>(s, "node", "support"), {}};
            for (const auto& name : field(s, "fixed", "support")) {
                const auto dof = name.get<std::string>();
                bool found = false;
                for (int k = 0; k < fea::kDofsPerNode; ++k) {
                    if (dof == kDofNames[k]) {
                        sup.fixed[static_cast<std::size_t>(k)] = true;
                        found = true;
                    }
                }
                if (!found) throw ValidationError("support: unknown DOF name '" + dof + "'");
            }
            spec.supports.push_back(sup);
        }
        for (const auto& l : field(j, "loads", ctx)) {
            fea::NodalLoad load{get<int>(l, "node", "load"), {}};
            const auto f = get<std::vector<double>>(l, "F_kN", "load");
            const auto m = get<std::vector<double>>(l, "M_kNm", "load");
            if (f.size() != 3 || m.size() != 3) throw ValidationError("load: F_kN and M_kNm need three components");
            for (std::size_t k = 0; k < 3; ++k) {
                load.components[k] = f[k];
                load.components[3 + k] = m[k];
            }
            spec.loads.push_back(load);
        }
        spec.design = design_from(field(j, "design", ctx));
        spec.optimizer = optimizer_from(field(j, "optimizer", ctx));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed case file: ") + e.what());
    }
    return spec;
}

std::string serialize_case(const CaseSpec& spec) { return to_json(spec).dump(1) + "\n"; }

CaseSpec parse_case(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("case file is not valid JSON: ") + e.what());
    }
    return case_from_json(j);
}

CaseSpec read_case_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open case file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    CaseSpec spec = parse_case(text.str());
    spec.validate();
    return spec;
}

void write_case_file(const CaseSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write case file " + path.string());
    out << serialize_case(spec);
    if (!out) throw Error("failed while writing " + path.string());
}

CaseSpec builtin_case_spec(const std::string& case_id, std::uint64_t seed, const param::CaseOptions& options) {
    const param::GeneratedCase gc = param::generate_case_mesh(case_id, seed, options);
    CaseSpec spec;
    spec.case_id = case_id;
    spec.seed = seed;

    // All members of a built-in case share one section.
    const fea::SectionMaterial section = gc.model.elements().front().section;
    spec.sections.push_back({"member", section});
    spec.nodes = gc.model.nodes();
    for (const auto& e : gc.model.elements()) spec.elements.push_back({e.tag, e.node_i, e.node_j, "member"});
    spec.supports = gc.model.supports();
    spec.loads = gc.model.loads();
    spec.design.map = gc.design;
    spec.design.initial_x = gc.design.current_x(gc.model);

    const auto n = static_cast<Eigen::Index>(gc.design.size());
    OptimizerSpec& o = spec.optimizer;
    o.line_search = true;
    o.line_search_params = {};
    // Initial trial steps tuned per case; initial compliances span over four orders of magnitude.
    if (case_id == "arch2d") {
        o.max_iterations = 1000;
        o.step = 30.0;
        o.line_search_params.initial_step = 100.0;
    } else if (case_id == "barrel") {
        o.max_iterations = 500;
        o.step = 10.0;
        o.line_search_params.initial_step = 100.0;
    } else if (case_id == "mannheim") {
        o.max_iterations = 150;
        o.step = 1e-3;
        o.line_search_params.initial_step = 0.1;
    } else if (case_id == "fourpoint") {
        o.max_iterations = 150;
        o.step = 1e-3;
        o.line_search_params.initial_step = 0.01;
    } else if (case_id == "twoedge") {
        o.solver = SolverKind::Sqp;
        o.max_iterations = 150;
        o.step = 1e-3;
        o.line_search_params.initial_step = 0.01;
        spec.design.bounds = Bounds{Eigen::VectorXd::Constant(n, 0.0), Eigen::VectorXd::Constant(n, 3.0)};
    } else if (case_id == "carioca") {
        o.max_iterations = 150;
        o.step = 1e-3;
        o.line_search_params.initial_step = 1.0;
        // The reduced-bending study is an unconstrained gradient-descent run.
        if (!options.reduced_bending) {
            o.solver = SolverKind::Sqp;
            spec.design.bounds = Bounds{Eigen::VectorXd::Constant(n, -6.0), Eigen::VectorXd::Constant(n, 10.0)};
        }
    }
    return spec;
}

std::string config_digest(const CaseSpec& spec) {
    const std::string text = to_json(spec).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace shapeopt::io
