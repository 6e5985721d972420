#include "qea/presets.hpp"

#include "qea/error.hpp"
#include "qea/json_util.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>

namespace qea {

namespace {

using nlohmann::json;

std::string join_field(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

std::optional<Expression> expression_field(const json& j, const char* key, VariableSet scope, bool required,
                                           const std::string& prefix, std::vector<Diagnostic>& diags) {
    const std::string field = join_field(prefix, key);
    if (!j.contains(key)) {
        if (required) diags.push_back({field, "missing"});
        return std::nullopt;
    }
    const json& v = j.at(key);
    if (!v.is_string()) {
        diags.push_back({field, "must be an expression string"});
        return std::nullopt;
    }
    try {
        return Expression::parse(v.get<std::string>(), scope);
    } catch (const Error& e) {
        diags.push_back({field, e.what()});
        return std::nullopt;
    }
}

std::optional<double> number_field(const json& j, const char* key, bool required, const std::string& prefix,
                                   std::vector<Diagnostic>& diags) {
    const std::string field = join_field(prefix, key);
    if (!j.contains(key)) {
        if (required) diags.push_back({field, "missing"});
        return std::nullopt;
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
        diags.push_back({field, "must be a number"});
        return std::nullopt;
    }
    return v.get<double>();
}

std::optional<std::string> string_field(const json& j, const char* key, bool required, const std::string& prefix,
                                        std::vector<Diagnostic>& diags) {
    const std::string field = join_field(prefix, key);
    if (!j.contains(key)) {
        if (required) diags.push_back({field, "missing"});
        return std::nullopt;
    }
    if (!j.at(key).is_string()) {
        diags.push_back({field, "must be a string"});
        return std::nullopt;
    }
    return j.at(key).get<std::string>();
}

std::optional<QpsKind> qps_field(const json& j, bool required, const std::string& prefix,
                                 std::vector<Diagnostic>& diags) {
    auto s = string_field(j, "qps", required, prefix, diags);
    if (!s) return std::nullopt;
    auto k = qps_from_string(*s);
    if (!k) diags.push_back({join_field(prefix, "qps"), "must be exponential, linear or logarithmic"});
    return k;
}

std::optional<SlowdownBreakdown> slowdown_from_json(const json& j, const std::string& field,
                                                    std::vector<Diagnostic>& diags) {
    if (!j.is_object()) {
        diags.push_back({field, "must be an object"});
        return std::nullopt;
    }
    const std::size_t before = diags.size();
    SlowdownBreakdown b;
    if (auto v = number_field(j, "gate_time_ns", true, field, diags)) b.gate_time_ns = *v;
    if (auto v = number_field(j, "classical_clock_ghz", false, field, diags)) b.classical_clock_ghz = *v;
    if (auto v = number_field(j, "gate_overhead", false, field, diags)) b.gate_overhead = *v;
    if (auto v = number_field(j, "alg_constant_ratio", false, field, diags)) b.alg_constant_ratio = *v;
    if (diags.size() != before) return std::nullopt;
    try {
        compose_slowdown(b);
    } catch (const InvalidParams& e) {
        diags.push_back({join_field(field, e.field()), "must be positive"});
        return std::nullopt;
    }
    return b;
}

nlohmann::ordered_json slowdown_json(const SlowdownBreakdown& b) {
    nlohmann::ordered_json j;
    j["gate_time_ns"] = json_number(b.gate_time_ns);
    j["classical_clock_ghz"] = json_number(b.classical_clock_ghz);
    j["gate_overhead"] = json_number(b.gate_overhead);
    j["alg_constant_ratio"] = json_number(b.alg_constant_ratio);
    return j;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PresetCorrupt("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::exception& e) {
        throw PresetCorrupt(path.string() + ": " + e.what());
    }
}

std::string describe(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
        if (!out.empty()) out += "; ";
        out += d.field + ": " + d.message;
    }
    return out;
}

const std::vector<const char*> kOverrideKeys{
    "classical_runtime", "quantum_runtime", "classical_work", "quantum_work", "connectivity_penalty",
    "qps", "hws", "slowdown", "qir_pct", "plqr", "rir_pct", "processors_log10", "cir_pct",
    "cost_factor_log10", "roadmap", "t0"};

}  // namespace

const ProblemPreset* Catalog::find_problem(std::string_view name) const {
    for (const auto& p : problems)
        if (p.name == name) return &p;
    return nullptr;
}

const HardwarePreset* Catalog::find_hardware(std::string_view name) const {
    for (const auto& h : hardware)
        if (h.name == name) return &h;
    return nullptr;
}

const Roadmap* Catalog::find_roadmap(std::string_view label) const {
    for (const auto& r : roadmaps)
        if (r.label() == label) return &r;
    return nullptr;
}

std::optional<ProblemPreset> problem_from_json(const json& j, const std::string& prefix,
                                               std::vector<Diagnostic>& diags) {
    if (!j.is_object()) {
        diags.push_back({prefix, "must be an object or a preset name"});
        return std::nullopt;
    }
    const std::size_t before = diags.size();
    auto name = string_field(j, "name", false, prefix, diags);
    auto c = expression_field(j, "classical_runtime", slots::classical_runtime, true, prefix, diags);
    auto q = expression_field(j, "quantum_runtime", slots::quantum_runtime, true, prefix, diags);
    auto cw = expression_field(j, "classical_work", slots::classical_work, false, prefix, diags);
    auto qw = expression_field(j, "quantum_work", slots::quantum_work, false, prefix, diags);
    auto qps = qps_field(j, true, prefix, diags);
    auto notes = string_field(j, "notes", false, prefix, diags);
    if (diags.size() != before) return std::nullopt;

    ProblemPreset p{
        .name = name.value_or("custom"),
        .classical_runtime = *c,
        .quantum_runtime = *q,
        .classical_work = cw ? *cw : c->substitute(Variable::procs, 1.0),
        .quantum_work = qw ? *qw : q->times(Expression::variable(Variable::q)),
        .classical_work_is_default = !cw,
        .quantum_work_is_default = !qw,
        .qps = *qps,
        .notes = notes.value_or(""),
    };
    return p;
}

std::optional<HardwarePreset> hardware_from_json(const json& j, const std::string& prefix,
                                                 std::vector<Diagnostic>& diags) {
    if (!j.is_object()) {
        diags.push_back({prefix, "must be an object or a preset name"});
        return std::nullopt;
    }
    const std::size_t before = diags.size();
    auto name = string_field(j, "name", false, prefix, diags);
    std::optional<SlowdownBreakdown> slowdown;
    if (j.contains("slowdown")) slowdown = slowdown_from_json(j.at("slowdown"), join_field(prefix, "slowdown"), diags);
    auto hws = number_field(j, "hws", !j.contains("slowdown"), prefix, diags);
    auto qir = number_field(j, "qir_pct", true, prefix, diags);
    auto pen = expression_field(j, "connectivity_penalty", slots::connectivity_penalty, true, prefix, diags);
    auto plqr = number_field(j, "plqr", true, prefix, diags);
    auto rir = number_field(j, "rir_pct", true, prefix, diags);
    auto cir = number_field(j, "cir_pct", true, prefix, diags);
    auto procs = number_field(j, "processors_log10", true, prefix, diags);
    auto cf = number_field(j, "cost_factor_log10", false, prefix, diags);
    auto roadmap = string_field(j, "roadmap_ref", false, prefix, diags);
    auto notes = string_field(j, "notes", false, prefix, diags);
    if (diags.size() != before) return std::nullopt;

    HardwarePreset h{
        .name = name.value_or("custom"),
        .hws = hws ? *hws : compose_slowdown(*slowdown),
        .slowdown = slowdown,
        .qir_pct = *qir,
        .connectivity_penalty = *pen,
        .plqr = *plqr,
        .rir_pct = *rir,
        .cir_pct = *cir,
        .processors_log10 = *procs,
        .cost_factor_log10 = cf,
        .roadmap_ref = roadmap.value_or(""),
        .notes = notes.value_or(""),
    };
    return h;
}

nlohmann::ordered_json to_json(const ProblemPreset& p) {
    nlohmann::ordered_json j;
    j["name"] = p.name;
    j["classical_runtime"] = p.classical_runtime.source();
    j["quantum_runtime"] = p.quantum_runtime.source();
    j["classical_work"] = p.classical_work.source();
    j["quantum_work"] = p.quantum_work.source();
    j["classical_work_is_default"] = p.classical_work_is_default;
    j["quantum_work_is_default"] = p.quantum_work_is_default;
    j["qps"] = to_string(p.qps);
    j["notes"] = p.notes;
    return j;
}

nlohmann::ordered_json to_json(const HardwarePreset& h) {
    nlohmann::ordered_json j;
    j["name"] = h.name;
    j["hws"] = json_number(h.hws);
    if (h.slowdown) j["slowdown"] = slowdown_json(*h.slowdown);
    j["qir_pct"] = json_number(h.qir_pct);
    j["connectivity_penalty"] = h.connectivity_penalty.source();
    j["plqr"] = json_number(h.plqr);
    j["rir_pct"] = json_number(h.rir_pct);
    j["cir_pct"] = json_number(h.cir_pct);
    j["processors_log10"] = json_number(h.processors_log10);
    if (h.cost_factor_log10) j["cost_factor_log10"] = json_number(*h.cost_factor_log10);
    j["roadmap_ref"] = h.roadmap_ref;
    j["notes"] = h.notes;
    return j;
}

nlohmann::ordered_json to_json(const Catalog& c) {
    nlohmann::ordered_json j;
    j["problems"] = nlohmann::ordered_json::array();
    for (const auto& p : c.problems) j["problems"].push_back(to_json(p));
    j["hardware"] = nlohmann::ordered_json::array();
    for (const auto& h : c.hardware) j["hardware"].push_back(to_json(h));
    j["roadmaps"] = nlohmann::ordered_json::array();
    for (const auto& r : c.roadmaps) j["roadmaps"].push_back(to_json(r));
    return j;
}

Catalog load_presets(const std::filesystem::path& data_dir) {
    Catalog cat;

    const auto roadmap_dir = data_dir / "roadmaps";
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(roadmap_dir, ec))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    if (ec) throw PresetCorrupt("cannot list " + roadmap_dir.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        try {
            cat.roadmaps.push_back(load_roadmap(f));
        } catch (const InvalidRoadmap& e) {
            throw PresetCorrupt(f.string() + ": " + e.what());
        }
    }

    std::vector<Diagnostic> diags;
    const json problems = read_json_file(data_dir / "presets" / "problems.json");
    if (!problems.is_array()) throw PresetCorrupt("problems.json must hold an array");
    for (std::size_t i = 0; i < problems.size(); ++i)
        if (auto p = problem_from_json(problems[i], "problems[" + std::to_string(i) + "]", diags))
            cat.problems.push_back(std::move(*p));

    const json hardware = read_json_file(data_dir / "presets" / "hardware.json");
    if (!hardware.is_array()) throw PresetCorrupt("hardware.json must hold an array");
    for (std::size_t i = 0; i < hardware.size(); ++i) {
        const std::string prefix = "hardware[" + std::to_string(i) + "]";
        if (auto h = hardware_from_json(hardware[i], prefix, diags)) {
            if (!cat.find_roadmap(h->roadmap_ref))
                diags.push_back({prefix + ".roadmap_ref", "no roadmap labelled '" + h->roadmap_ref + "'"});
            if (h->slowdown && std::abs(compose_slowdown(*h->slowdown) - h->hws) > 0.01)
                diags.push_back({prefix + ".hws", "disagrees with the composed slowdown by more than 0.01"});
            cat.hardware.push_back(std::move(*h));
        }
    }
    if (!diags.empty()) throw PresetCorrupt(describe(diags));
    return cat;
}

int current_calendar_year() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    return utc.tm_year + 1900;
}

std::optional<ModelParams> resolve_params(const ProblemPreset& problem, const HardwarePreset& hardware,
                                          const Catalog& catalog, const json& overrides,
                                          std::vector<Diagnostic>& diags, std::optional<double> default_t0) {
    const std::size_t before = diags.size();
    if (!overrides.is_null() && !overrides.is_object()) {
        diags.push_back({"overrides", "must be an object"});
        return std::nullopt;
    }
    const json ov = overrides.is_null() ? json::object() : overrides;
    for (const auto& [key, _] : ov.items())
        if (std::find_if(kOverrideKeys.begin(), kOverrideKeys.end(), [&](const char* k) { return key == k; }) ==
            kOverrideKeys.end())
            diags.push_back({key, "unknown override key"});

    const Roadmap* roadmap = nullptr;
    std::optional<Roadmap> inline_roadmap;
    if (ov.contains("roadmap")) {
        const json& r = ov.at("roadmap");
        if (r.is_string()) {
            roadmap = catalog.find_roadmap(r.get<std::string>());
            if (!roadmap) diags.push_back({"roadmap", "unknown roadmap '" + r.get<std::string>() + "'"});
        } else {
            try {
                inline_roadmap = roadmap_from_json(r);
                roadmap = &*inline_roadmap;
            } catch (const InvalidRoadmap& e) {
                diags.push_back({"roadmap", e.what()});
            }
        }
    } else {
        roadmap = catalog.find_roadmap(hardware.roadmap_ref);
        if (!roadmap) diags.push_back({"roadmap", "unknown roadmap '" + hardware.roadmap_ref + "'"});
    }

    const std::string none;
    auto c = expression_field(ov, "classical_runtime", slots::classical_runtime, false, none, diags);
    auto q = expression_field(ov, "quantum_runtime", slots::quantum_runtime, false, none, diags);
    auto cw = expression_field(ov, "classical_work", slots::classical_work, false, none, diags);
    auto qw = expression_field(ov, "quantum_work", slots::quantum_work, false, none, diags);
    auto pen = expression_field(ov, "connectivity_penalty", slots::connectivity_penalty, false, none, diags);
    auto qps = qps_field(ov, false, none, diags);
    auto hws = number_field(ov, "hws", false, none, diags);
    std::optional<SlowdownBreakdown> slowdown;
    if (ov.contains("slowdown")) slowdown = slowdown_from_json(ov.at("slowdown"), "slowdown", diags);
    auto qir = number_field(ov, "qir_pct", false, none, diags);
    auto plqr = number_field(ov, "plqr", false, none, diags);
    auto rir = number_field(ov, "rir_pct", false, none, diags);
    auto procs = number_field(ov, "processors_log10", false, none, diags);
    auto cir = number_field(ov, "cir_pct", false, none, diags);
    auto cf = number_field(ov, "cost_factor_log10", false, none, diags);
    auto t0 = number_field(ov, "t0", false, none, diags);
    if (hws && slowdown) diags.push_back({"slowdown", "give either hws or slowdown, not both"});
    if (diags.size() != before) return std::nullopt;

    ModelParams p{
        .classical_runtime = c.value_or(problem.classical_runtime),
        .quantum_runtime = q.value_or(problem.quantum_runtime),
        .classical_work = cw ? cw : (problem.classical_work_is_default ? std::nullopt
                                                                       : std::optional(problem.classical_work)),
        .quantum_work = qw ? qw : (problem.quantum_work_is_default ? std::nullopt
                                                                   : std::optional(problem.quantum_work)),
        .connectivity_penalty = pen.value_or(hardware.connectivity_penalty),
        .qps = qps.value_or(problem.qps),
        .hws = hws ? *hws : (slowdown ? compose_slowdown(*slowdown) : hardware.hws),
        .qir_pct = qir.value_or(hardware.qir_pct),
        .plqr = plqr.value_or(hardware.plqr),
        .rir_pct = rir.value_or(hardware.rir_pct),
        .processors_log10 = procs.value_or(hardware.processors_log10),
        .cir_pct = cir.value_or(hardware.cir_pct),
        .cost_factor_log10 = 0.0,
        .roadmap = *roadmap,
        .t0 = t0.value_or(default_t0.value_or(static_cast<double>(current_calendar_year()))),
    };
    p.cost_factor_log10 = cf ? *cf : hardware.cost_factor_log10.value_or(p.hws + p.processors_log10);

    for (auto& d : validate(p)) diags.push_back(std::move(d));
    if (diags.size() != before) return std::nullopt;
    return p;
}

ModelParams build_params(const ProblemPreset& problem, const HardwarePreset& hardware, const Catalog& catalog,
                         const json& overrides) {
    std::vector<Diagnostic> diags;
    auto p = resolve_params(problem, hardware, catalog, overrides, diags);
    if (!p) throw InvalidOverride(diags.front().field, diags.front().message);
    return *p;
}

}  // namespace qea
