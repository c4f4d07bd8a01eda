#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "shapeopt/fea/model.hpp"
#include "shapeopt/optim/types.hpp"

namespace shapeopt::io {

enum class ExportFormat { Obj, Csv, Svg };

/// Parses a comma-separated list such as "obj,csv,svg".
std::vector<ExportFormat> parse_formats(const std::string& list);

/// Wavefront OBJ: one vertex per node, one line per beam-column.
std::string model_to_obj(const fea::StructuralModel& model);

/// Line plot with one polyline for the series.
std::string history_svg(const std::vector<double>& values, const std::string& title, const std::string& y_label);

std::vector<optim::IterationRecord> read_history_csv(const std::filesystem::path& path);

/// Writes the requested formats from a run directory produced by run_case:
/// obj -> export_geometry.obj, csv -> final_nodes.csv and history_export.csv,
/// svg -> compliance_history.svg and max_height_history.svg. Returns the files
/// written. Throws ValidationError when the history is empty.
std::vector<std::filesystem::path> export_outputs(const std::filesystem::path& run_dir,
                                                  const std::vector<ExportFormat>& formats);

}  // namespace shapeopt::io
