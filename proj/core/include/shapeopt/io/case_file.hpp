#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "shapeopt/fea/model.hpp"
#include "shapeopt/optim/types.hpp"
#include "shapeopt/param/cases.hpp"
#include "shapeopt/param/design_map.hpp"

namespace shapeopt::io {

inline constexpr int kSchemaVersion = 1;

enum class SolverKind { GradientDescent, Sqp };

std::string to_string(SolverKind solver);
SolverKind parse_solver(const std::string& name);

struct NamedSection {
    std::string name;
    fea::SectionMaterial section;

    friend bool operator==(const NamedSection&, const NamedSection&) = default;
};

struct ElementSpec {
    int tag{0};
    int node_i{0};
    int node_j{0};
    std::string section;

    friend bool operator==(const ElementSpec&, const ElementSpec&) = default;
};

struct Bounds {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    friend bool operator==(const Bounds& a, const Bounds& b) {
        return a.lower.size() == b.lower.size() && a.upper.size() == b.upper.size() && a.lower == b.lower &&
               a.upper == b.upper;
    }
};

struct DesignSpec {
    param::DesignMap map;
    std::optional<Bounds> bounds;
    Eigen::VectorXd initial_x;

    friend bool operator==(const DesignSpec& a, const DesignSpec& b) {
        return a.map == b.map && a.bounds == b.bounds && a.initial_x.size() == b.initial_x.size() &&
               a.initial_x == b.initial_x;
    }
};

struct OptimizerSpec {
    SolverKind solver{SolverKind::GradientDescent};
    int max_iterations{150};
    double tolerance{0.0};  // kN m
    double step{1e-3};
    bool line_search{true};
    optim::LineSearchParams line_search_params{};
    int checkpoint_every{10};

    friend bool operator==(const OptimizerSpec&, const OptimizerSpec&) = default;
};

/// Self-contained description of a form-finding run.
struct CaseSpec {
    int schema_version{kSchemaVersion};
    std::string case_id;
    std::uint64_t seed{0};
    std::vector<NamedSection> sections;
    std::vector<fea::NodeRecord> nodes;
    std::vector<ElementSpec> elements;
    std::vector<fea::Support> supports;
    std::vector<fea::NodalLoad> loads;
    DesignSpec design;
    OptimizerSpec optimizer;

    /// Structural model with the nodes as listed (initial_x is not applied).
    fea::StructuralModel build_model() const;

    /// Checks every reference and size; throws ValidationError.
    void validate() const;

    friend bool operator==(const CaseSpec&, const CaseSpec&) = default;
};

nlohmann::json to_json(const CaseSpec& spec);
CaseSpec case_from_json(const nlohmann::json& j);

/// Pretty-printed JSON text; identical input gives identical bytes.
std::string serialize_case(const CaseSpec& spec);
CaseSpec parse_case(const std::string& text);

CaseSpec read_case_file(const std::filesystem::path& path);
void write_case_file(const CaseSpec& spec, const std::filesystem::path& path);

/// Built-in case with its default optimizer settings and, where the case is
/// height-limited, its bounds.
CaseSpec builtin_case_spec(const std::string& case_id, std::uint64_t seed,
                           const param::CaseOptions& options = {});

/// 64-bit FNV-1a digest of the canonical serialisation, as 16 hex digits.
std::string config_digest(const CaseSpec& spec);

}  // namespace shapeopt::io
