#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "shapeopt/io/case_file.hpp"
#include "shapeopt/optim/types.hpp"

namespace shapeopt::io {

/// Command-line overrides applied on top of a spec's optimizer block.
struct RunOverrides {
    std::optional<SolverKind> solver;
    std::optional<int> max_iterations;
    std::optional<double> tolerance;
    std::optional<double> step;
    std::optional<bool> line_search;
};

struct RunSummary {
    optim::OptimResult result;
    std::string digest;
    double seconds{0.0};
};

/// Spec with the overrides folded into its optimizer block.
CaseSpec apply_overrides(CaseSpec spec, const RunOverrides& overrides);

/// Runs the configured optimizer and writes history.csv (streamed row by
/// row), geometry.obj, gradient.json, final_state.json, meta.json and
/// periodic checkpoint.json into out_dir. When the run fails part way the
/// rows accepted so far stay on disk, meta.json records the error and, for a
/// failed iterate, failed_iterate.json holds the design; the error is rethrown.
RunSummary run_spec(const CaseSpec& spec, const std::filesystem::path& out_dir);

/// Reads and validates the spec before touching out_dir, then calls run_spec.
RunSummary run_case(const std::filesystem::path& spec_path, const RunOverrides& overrides,
                    const std::filesystem::path& out_dir);

/// history.csv text for a list of records (header included).
std::string history_csv(const std::vector<optim::IterationRecord>& history);
std::string history_csv_header();
std::string history_csv_row(const optim::IterationRecord& record);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace shapeopt::io
