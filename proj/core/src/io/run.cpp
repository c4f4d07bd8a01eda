#include "shapeopt/io/run.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "shapeopt/errors.hpp"
#include "shapeopt/io/export.hpp"
#include "shapeopt/log.hpp"
#include "shapeopt/optim/gradient_descent.hpp"
#include "shapeopt/optim/sqp.hpp"
#include "shapeopt/sensitivity/structural_problem.hpp"

namespace shapeopt::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string history_csv_header() {
    return "iter,compliance_kNm,grad_norm,max_z_m,feasibility_violation_m,step_length\n";
}

std::string history_csv_row(const optim::IterationRecord& r) {
    return std::to_string(r.k) + "," + format_double(r.compliance) + "," + format_double(r.grad_norm) + "," +
           format_double(r.max_z) + "," + format_double(r.feasibility_violation) + "," + format_double(r.step_length) +
           "\n";
}

std::string history_csv(const std::vector<optim::IterationRecord>& history) {
    std::string out = history_csv_header();
    for (const auto& r : history) out += history_csv_row(r);
    return out;
}

CaseSpec apply_overrides(CaseSpec spec, const RunOverrides& o) {
    if (o.solver) spec.optimizer.solver = *o.solver;
    if (o.max_iterations) spec.optimizer.max_iterations = *o.max_iterations;
    if (o.tolerance) spec.optimizer.tolerance = *o.tolerance;
    if (o.step) spec.optimizer.step = *o.step;
    if (o.line_search) spec.optimizer.line_search = *o.line_search;
    return spec;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

json vector_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json gradient_json(const Eigen::VectorXd& g) {
    json a = json::array();
    for (Eigen::Index i = 0; i < g.size(); ++i) a.push_back({{"variable", i}, {"value", g[i]}});
    return {{"units", "kN m per m"}, {"gradient", a}};
}

json state_json(const fea::StructuralModel& model, const Eigen::VectorXd& x) {
    json nodes = json::array();
    for (const auto& n : model.nodes()) {
        nodes.push_back({{"id", n.id}, {"x_m", n.position.x()}, {"y_m", n.position.y()}, {"z_m", n.position.z()}});
    }
    json elements = json::array();
    for (const auto& e : model.elements()) elements.push_back({e.tag, e.node_i, e.node_j});
    return {{"x_m", vector_json(x)}, {"nodes", nodes}, {"elements", elements}};
}

optim::OptimConfig to_config(const OptimizerSpec& o) {
    optim::OptimConfig c;
    c.max_iterations = o.max_iterations;
    c.tolerance = o.tolerance;
    c.step = o.step;
    c.line_search = o.line_search;
    c.line_search_params = o.line_search_params;
    return c;
}

}  // namespace

RunSummary run_spec(const CaseSpec& spec, const fs::path& out_dir) {
    spec.validate();
    const fea::StructuralModel base = spec.build_model();
    const sens::StructuralProblem problem(base, spec.design.map);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());

    RunSummary summary;
    summary.digest = config_digest(spec);

    std::ofstream history(out_dir / "history.csv", std::ios::binary | std::ios::trunc);
    if (!history) throw Error("cannot write " + (out_dir / "history.csv").string());
    history << history_csv_header() << std::flush;

    optim::OptimConfig config = to_config(spec.optimizer);
    const int every = spec.optimizer.checkpoint_every;
    config.on_record = [&](const optim::IterationRecord& r, const Eigen::VectorXd& x) {
        history << history_csv_row(r) << std::flush;
        if (every > 0 && r.k > 0 && r.k % every == 0) {
            write_text(out_dir / "checkpoint.json", json{{"iter", r.k}, {"x_m", vector_json(x)}}.dump(1) + "\n");
        }
    };

    json meta{{"case_id", spec.case_id},
              {"seed", spec.seed},
              {"config_digest", summary.digest},
              {"solver", to_string(spec.optimizer.solver)},
              {"schema_version", spec.schema_version}};

    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    try {
        if (spec.optimizer.solver == SolverKind::Sqp) {
            optim::ConstraintSet cs;
            if (spec.design.bounds) cs = optim::ConstraintSet::box(spec.design.bounds->lower, spec.design.bounds->upper);
            summary.result = optim::sqp_run(problem, cs, spec.design.initial_x, config);
        } else {
            if (spec.design.bounds) log_warning("gradient descent ignores the design bounds of this case");
            summary.result = optim::gradient_descent_run(problem, spec.design.initial_x, config);
        }
    } catch (const Error& err) {
        meta["status"] = "failed";
        meta["error"] = err.what();
        meta["timings"] = {{"total_s", elapsed()}};
        if (const auto* it = dynamic_cast<const optim::IterateError*>(&err)) {
            meta["accepted_iterations"] = it->history().empty() ? 0 : it->history().back().k;
            write_text(out_dir / "failed_iterate.json", json{{"x_m", vector_json(it->x())}}.dump(1) + "\n");
        }
        write_text(out_dir / "meta.json", meta.dump(1) + "\n");
        throw;
    }
    summary.seconds = elapsed();
    history.close();

    const optim::OptimResult& r = summary.result;
    const fea::StructuralModel final_model = problem.model_at(r.x);
    write_text(out_dir / "geometry.obj", model_to_obj(final_model));
    write_text(out_dir / "gradient.json", gradient_json(r.gradient).dump(1) + "\n");
    write_text(out_dir / "final_state.json", state_json(final_model, r.x).dump(1) + "\n");

    const auto iterations = r.history.back().k;
    meta["status"] = "ok";
    meta["stop_reason"] = optim::to_string(r.reason);
    meta["iterations"] = iterations;
    meta["initial_compliance_kNm"] = r.history.front().compliance;
    meta["final_compliance_kNm"] = r.history.back().compliance;
    meta["final_max_z_m"] = r.history.back().max_z;
    meta["timings"] = {{"total_s", summary.seconds},
                       {"per_iteration_s", iterations > 0 ? summary.seconds / iterations : summary.seconds}};
    write_text(out_dir / "meta.json", meta.dump(1) + "\n");
    return summary;
}

RunSummary run_case(const fs::path& spec_path, const RunOverrides& overrides, const fs::path& out_dir) {
    const CaseSpec spec = apply_overrides(read_case_file(spec_path), overrides);
    spec.validate();
    return run_spec(spec, out_dir);
}

}  // namespace shapeopt::io
