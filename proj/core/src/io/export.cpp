#include "shapeopt/io/export.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shapeopt/errors.hpp"
#include "shapeopt/io/run.hpp"

namespace shapeopt::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<ExportFormat> parse_formats(const std::string& list) {
    std::vector<ExportFormat> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ExportFormat f;
        if (item == "obj") {
            f = ExportFormat::Obj;
        } else if (item == "csv") {
            f = ExportFormat::Csv;
        } else if (item == "svg") {
            f = ExportFormat::Svg;
        } else {
            throw ValidationError("unknown export format '" + item + "' (expected obj, csv or svg)");
        }
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    if (out.empty()) throw ValidationError("no export format given");
    return out;
}

std::string model_to_obj(const fea::StructuralModel& model) {
    std::string out = "# nodes " + std::to_string(model.node_count()) + ", members " +
                      std::to_string(model.element_count()) + "\n";
    for (const auto& n : model.nodes()) {
        out += "v " + format_double(n.position.x()) + " " + format_double(n.position.y()) + " " +
               format_double(n.position.z()) + "\n";
    }
    for (std::size_t e = 0; e < model.element_count(); ++e) {
        const auto [i, j] = model.element_nodes(e);
        out += "l " + std::to_string(i + 1) + " " + std::to_string(j + 1) + "\n";
    }
    return out;
}

std::string history_svg(const std::vector<double>& values, const std::string& title, const std::string& y_label) {
    constexpr double width = 640.0;
    constexpr double height = 400.0;
    constexpr double left = 70.0;
    constexpr double right = 20.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;

    double lo = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    double hi = values.empty() ? 1.0 : *std::max_element(values.begin(), values.end());
    if (hi <= lo) {
        hi = lo + 1.0;
    }
    const double span_x = values.size() > 1 ? static_cast<double>(values.size() - 1) : 1.0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"12\">iteration</text>\n";
    svg << "<text x=\"16\" y=\"" << height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << height / 2
        << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_double(hi) << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << height - bottom << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_double(lo) << "</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double px = left + (width - left - right) * static_cast<double>(i) / span_x;
        const double py = height - bottom - (height - top - bottom) * (values[i] - lo) / (hi - lo);
        svg << (i ? " " : "") << px << "," << py;
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

std::vector<optim::IterationRecord> read_history_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line + "\n" != history_csv_header()) {
        throw ValidationError(path.string() + " does not start with the history header");
    }
    std::vector<optim::IterationRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) throw ValidationError("malformed history row: " + line);
        try {
            out.push_back({std::stoi(cells[0]), std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]),
                           std::stod(cells[4]), std::stod(cells[5])});
        } catch (const std::exception&) {
            throw ValidationError("malformed history row: " + line);
        }
    }
    return out;
}

std::vector<fs::path> export_outputs(const fs::path& run_dir, const std::vector<ExportFormat>& formats) {
    const auto history = read_history_csv(run_dir / "history.csv");
    if (history.empty()) throw ValidationError("run history in " + run_dir.string() + " is empty");

    std::ifstream state_in(run_dir / "final_state.json");
    if (!state_in) throw ValidationError("cannot open " + (run_dir / "final_state.json").string());
    json state;
    try {
        state = json::parse(state_in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("final_state.json is malformed: ") + e.what());
    }

    const auto write = [](const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + p.string());
        out << text;
        return p;
    };

    std::vector<fs::path> written;
    for (const ExportFormat f : formats) {
        if (f == ExportFormat::Obj) {
            std::vector<fea::NodeRecord> nodes;
            for (const auto& n : state.at("nodes")) {
                nodes.push_back({n.at("id").get<int>(), fea::Vec3(n.at("x_m").get<double>(), n.at("y_m").get<double>(),
                                                                  n.at("z_m").get<double>())});
            }
            std::vector<fea::BeamColumn> members;
            for (const auto& e : state.at("elements")) {
                members.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                                   fea::SectionMaterial::reference()});
            }
            const fea::StructuralModel model(std::move(nodes), std::move(members), {}, {});
            written.push_back(write(run_dir / "export_geometry.obj", model_to_obj(model)));
        } else if (f == ExportFormat::Csv) {
            std::string nodes_csv = "id,x_m,y_m,z_m\n";
            for (const auto& n : state.at("nodes")) {
                nodes_csv += std::to_string(n.at("id").get<int>()) + "," + format_double(n.at("x_m").get<double>()) +
                             "," + format_double(n.at("y_m").get<double>()) + "," +
                             format_double(n.at("z_m").get<double>()) + "\n";
            }
            written.push_back(write(run_dir / "final_nodes.csv", nodes_csv));
            written.push_back(write(run_dir / "history_export.csv", history_csv(history)));
        } else {
            std::vector<double> c;
            std::vector<double> z;
            for (const auto& r : history) {
                c.push_back(r.compliance);
                z.push_back(r.max_z);
            }
            written.push_back(write(run_dir / "compliance_history.svg", history_svg(c, "Compliance", "C (kN m)")));
            written.push_back(write(run_dir / "max_height_history.svg", history_svg(z, "Maximum height", "max Z (m)")));
        }
    }
    return written;
}

}  // namespace shapeopt::io
