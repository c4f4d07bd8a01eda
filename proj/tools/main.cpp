// shapeopt command-line tool: case generation, optimisation runs, export and
// the sensitivity benchmark.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shapeopt/errors.hpp"
#include "shapeopt/io/bench.hpp"
#include "shapeopt/io/case_file.hpp"
#include "shapeopt/io/export.hpp"
#include "shapeopt/io/run.hpp"
#include "shapeopt/optim/types.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::vector<std::size_t> parse_counts(const std::string& list) {
    std::vector<std::size_t> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw shapeopt::ValidationError("element counts must be positive integers, got '" + item + "'");
        }
    }
    if (out.empty()) throw shapeopt::ValidationError("no element counts given");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace shapeopt;

    CLI::App app{"Compliance-driven shape optimisation of beam-column structures"};
    app.require_subcommand(1);

    // case
    std::string case_id;
    std::uint64_t seed = 1;
    std::string case_out;
    bool reduced_bending = false;
    auto* case_cmd = app.add_subcommand("case", "Write a built-in case as a JSON case file");
    case_cmd->add_option("id", case_id, "arch2d | barrel | mannheim | fourpoint | twoedge | carioca")->required();
    case_cmd->add_option("--seed", seed, "Seed for random initial heights");
    case_cmd->add_option("--out", case_out, "Output case file")->required();
    case_cmd->add_flag("--reduced-bending", reduced_bending, "Scale Iy and Iz by 0.1");

    // run
    std::string spec_path;
    std::string run_out;
    std::string solver;
    int max_iter = 0;
    double tol = 0.0;
    double step = 0.0;
    std::string line_search;
    auto* run_cmd = app.add_subcommand("run", "Optimise a case file");
    run_cmd->add_option("file", spec_path, "Case file")->required();
    run_cmd->add_option("--solver", solver, "gd | sqp")->check(CLI::IsMember({"gd", "sqp"}));
    run_cmd->add_option("--max-iter", max_iter, "Maximum iterations");
    run_cmd->add_option("--tol", tol, "Stop when |C_k - C_{k-1}| < tol (kN m)");
    run_cmd->add_option("--step", step, "Fixed step size used without line search");
    run_cmd->add_option("--line-search", line_search, "on | off")->check(CLI::IsMember({"on", "off"}));
    run_cmd->add_option("--out", run_out, "Output directory")->required();

    // bench
    std::string counts;
    int repeats = 3;
    std::string bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "Time sensitivity assembly against finite differences");
    bench_cmd->add_option("--elements", counts, "Comma-separated element counts")->required();
    bench_cmd->add_option("--repeats", repeats, "Repeats per count (median reported)");
    bench_cmd->add_option("--out", bench_out, "Output CSV")->required();

    // export
    std::string export_dir;
    std::string formats = "obj,csv,svg";
    auto* export_cmd = app.add_subcommand("export", "Export a run directory as OBJ / CSV / SVG");
    export_cmd->add_option("dir", export_dir, "Run directory")->required();
    export_cmd->add_option("--formats", formats, "Comma-separated list of obj, csv, svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*case_cmd) {
            const io::CaseSpec spec = io::builtin_case_spec(case_id, seed, {reduced_bending});
            io::write_case_file(spec, case_out);
            std::cout << "wrote " << case_out << " (" << spec.nodes.size() << " nodes, " << spec.elements.size()
                      << " members, " << spec.design.map.size() << " design variables)\n";
        } else if (*run_cmd) {
            io::RunOverrides o;
            if (!solver.empty()) o.solver = io::parse_solver(solver);
            if (run_cmd->count("--max-iter")) o.max_iterations = max_iter;
            if (run_cmd->count("--tol")) o.tolerance = tol;
            if (run_cmd->count("--step")) o.step = step;
            if (!line_search.empty()) o.line_search = line_search == "on";
            const io::RunSummary s = io::run_case(spec_path, o, run_out);
            const auto& h = s.result.history;
            std::cout << "iterations " << h.back().k << ", compliance " << h.front().compliance << " -> "
                      << h.back().compliance << " kN m, stop: " << optim::to_string(s.result.reason)
                      << ", digest " << s.digest << "\n";
        } else if (*bench_cmd) {
            const auto rows = io::bench_sensitivity(parse_counts(counts), repeats);
            std::ofstream out(bench_out, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write " + bench_out);
            out << io::bench_csv(rows);
            std::cout << io::bench_csv(rows);
        } else if (*export_cmd) {
            for (const auto& p : io::export_outputs(export_dir, io::parse_formats(formats))) {
                std::cout << "wrote " << p.string() << "\n";
            }
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
