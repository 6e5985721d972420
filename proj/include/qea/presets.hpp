#pragma once

#include "qea/model.hpp"
#include "qea/roadmap.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qea {

struct ProblemPreset {
    std::string name;
    Expression classical_runtime;
    Expression quantum_runtime;
    Expression classical_work;  // C(n, 1) unless the file sets it
    Expression quantum_work;    // Q(n) * q unless the file sets it
    bool classical_work_is_default = true;
    bool quantum_work_is_default = true;
    QpsKind qps = QpsKind::linear;
    std::string notes;
};

struct HardwarePreset {
    std::string name;
    double hws = 0.0;
    std::optional<SlowdownBreakdown> slowdown;  // what hws was composed from
    double qir_pct = 0.0;
    Expression connectivity_penalty;
    double plqr = 3.0;
    double rir_pct = 0.0;
    double cir_pct = 0.0;
    double processors_log10 = 0.0;
    // Defaults to hws + processors_log10: one quantum operation costs as much
    // as 10^hws cycles of the 10^p-processor cost-equivalent machine.
    std::optional<double> cost_factor_log10;
    std::string roadmap_ref;
    std::string notes;
};

struct Catalog {
    std::vector<ProblemPreset> problems;
    std::vector<HardwarePreset> hardware;
    std::vector<Roadmap> roadmaps;

    const ProblemPreset* find_problem(std::string_view name) const;
    const HardwarePreset* find_hardware(std::string_view name) const;
    const Roadmap* find_roadmap(std::string_view label) const;
};

// Reads <dir>/presets/problems.json, <dir>/presets/hardware.json and every
// <dir>/roadmaps/*.json. Throws PresetCorrupt on any parse or schema failure.
Catalog load_presets(const std::filesystem::path& data_dir);

// Schema readers shared by the preset files, config files and HTTP bodies.
// Problems are appended to `diags` with field names prefixed by `prefix`.
std::optional<ProblemPreset> problem_from_json(const nlohmann::json& j, const std::string& prefix,
                                               std::vector<Diagnostic>& diags);
std::optional<HardwarePreset> hardware_from_json(const nlohmann::json& j, const std::string& prefix,
                                                 std::vector<Diagnostic>& diags);

nlohmann::ordered_json to_json(const ProblemPreset& p);
nlohmann::ordered_json to_json(const HardwarePreset& h);
nlohmann::ordered_json to_json(const Catalog& c);

// Merges a problem, a hardware preset and overrides (applied last) into
// validated parameters. Collects every problem into `diags` and returns
// nullopt if there was any.
std::optional<ModelParams> resolve_params(const ProblemPreset& problem, const HardwarePreset& hardware,
                                          const Catalog& catalog, const nlohmann::json& overrides,
                                          std::vector<Diagnostic>& diags,
                                          std::optional<double> default_t0 = std::nullopt);

// Throwing form; t0 defaults to the current calendar year. Throws
// InvalidOverride naming the first offending key.
ModelParams build_params(const ProblemPreset& problem, const HardwarePreset& hardware, const Catalog& catalog,
                         const nlohmann::json& overrides = nlohmann::json::object());

int current_calendar_year();

}  // namespace qea
