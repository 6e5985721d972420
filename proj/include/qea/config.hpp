#pragma once

#include "qea/model.hpp"
#include "qea/presets.hpp"
#include "qea/sensitivity.hpp"
#include "qea/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qea {

enum class Mode { speed, cost, both };
const char* to_string(Mode m) noexcept;

enum class OutputFormat { csv, json };

struct CurveWindow {
    double start = 0.0;
    double end = 0.0;
    double step = 0.1;
};

struct SweepRequest {
    double target_size_log10 = 0.0;
    Criterion criterion = Criterion::speed;
    std::vector<Perturbation> perturbations;
};

// A run config after presets, overrides and defaults have been applied.
struct RunPlan {
    std::string problem_name;
    std::string hardware_name;
    ModelParams params;
    Mode mode = Mode::both;
    std::vector<double> fixed_sizes;  // log10 n
    CurveWindow curves;
    std::optional<SweepRequest> sweep;
    OutputFormat format = OutputFormat::json;
    std::string output_path;  // directory; empty means stdout
};

// Reads a config document:
//   problem, hardware   preset name or inline object
//   overrides           parameter overrides (see resolve_params)
//   mode                "speed" | "cost" | "both" (default both)
//   fixed_sizes         list of log10 n >= 0
//   curves              {start, end, step}; defaults t0, t0 + 30, 0.1
//   sweep               {target_size_log10, criterion, perturbations}
//                       perturbations: "default" or [{parameter, kind, values}]
//   output              {format: "csv" | "json", path}
// Every problem found is appended to `diags`; nullopt if there was any.
std::optional<RunPlan> plan_from_json(const nlohmann::json& doc, const Catalog& catalog,
                                      std::vector<Diagnostic>& diags);

std::vector<Diagnostic> validate_config(const nlohmann::json& doc, const Catalog& catalog);

struct FixedSizeResult {
    double log10_n = 0.0;
    std::optional<double> speed_year;
    std::optional<double> cost_year;
};

struct Evaluation {
    QeaResult result;
    std::vector<FixedSizeResult> fixed;
    Curves curves;
};

// Solves, evaluates fixed sizes and samples curves. Does not run the sweep.
Evaluation evaluate(const RunPlan& plan);
SweepSpec sweep_spec(const RunPlan& plan);

nlohmann::ordered_json params_json(const ModelParams& p);
nlohmann::ordered_json summary_json(const RunPlan& plan, const Evaluation& ev);

// Columns year, adv_log10n, feas_log10n, advcost_log10n; empty field for gaps.
std::string curves_csv(const Curves& c);
nlohmann::ordered_json curves_json(const Curves& c);

nlohmann::ordered_json sweep_row_json(const SweepRow& row);
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);
std::string sweep_csv(const SweepReport& report);
nlohmann::ordered_json sweep_json(const SweepReport& report);

nlohmann::ordered_json diagnostics_json(const std::vector<Diagnostic>& diags);

}  // namespace qea
