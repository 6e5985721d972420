#include "qea/config.hpp"

#include "qea/error.hpp"
#include "qea/json_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace qea {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kDefaultCurveSpan = 30.0;

const char* const kTopLevelKeys[] = {"problem", "hardware", "overrides", "mode", "fixed_sizes",
                                     "curves", "sweep", "output"};

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Grid years carry accumulated step error; 1e-6 of a year is far below any
// meaningful resolution.
double tidy_year(double t) { return std::round(t * 1e6) / 1e6; }

std::string csv_field(const std::optional<double>& v) { return v ? shortest(*v) : std::string(); }

ordered_json optional_number(const std::optional<double>& v) {
    return v ? json_finite_or_null(*v) : ordered_json(nullptr);
}

ordered_json optional_year(const std::optional<double>& v) {
    return v ? ordered_json(report_year(*v)) : ordered_json(nullptr);
}

std::optional<double> optional_number_field(const json& j, const char* key, const std::string& prefix,
                                            std::vector<Diagnostic>& diags) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number()) {
        diags.push_back({prefix + "." + key, "must be a number"});
        return std::nullopt;
    }
    return j.at(key).get<double>();
}

std::optional<Criterion> criterion_from(const json& j, const std::string& field, std::vector<Diagnostic>& diags) {
    if (j.is_string() && j.get<std::string>() == "speed") return Criterion::speed;
    if (j.is_string() && j.get<std::string>() == "cost") return Criterion::cost;
    diags.push_back({field, "must be \"speed\" or \"cost\""});
    return std::nullopt;
}

std::optional<std::vector<Perturbation>> perturbations_from(const json& j, std::vector<Diagnostic>& diags) {
    const std::string field = "sweep.perturbations";
    if (j.is_string()) {
        if (j.get<std::string>() == "default") return default_perturbations();
        diags.push_back({field, "must be \"default\" or a list"});
        return std::nullopt;
    }
    if (!j.is_array()) {
        diags.push_back({field, "must be \"default\" or a list"});
        return std::nullopt;
    }
    const std::size_t before = diags.size();
    std::vector<Perturbation> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        const json& e = j[i];
        if (!e.is_object()) {
            diags.push_back({f, "must be an object"});
            continue;
        }
        Perturbation p;
        if (!e.contains("parameter") || !e.at("parameter").is_string()) {
            diags.push_back({f + ".parameter", "missing or not a string"});
        } else {
            p.parameter_id = e.at("parameter").get<std::string>();
            if (!is_sweepable(p.parameter_id))
                diags.push_back({f + ".parameter", "unknown sweep parameter '" + p.parameter_id + "'"});
        }
        const std::string kind = e.value("kind", std::string("set"));
        if (kind == "set") p.kind = PerturbationKind::set_value;
        else if (kind == "scale") p.kind = PerturbationKind::scale;
        else diags.push_back({f + ".kind", "must be \"set\" or \"scale\""});
        if (!e.contains("values") || !e.at("values").is_array()) {
            diags.push_back({f + ".values", "missing or not a list"});
        } else {
            for (const auto& v : e.at("values")) {
                if (!v.is_number() || !std::isfinite(v.get<double>())) {
                    diags.push_back({f + ".values", "must hold finite numbers"});
                    break;
                }
                if (p.kind == PerturbationKind::scale && !(v.get<double>() > 0.0)) {
                    diags.push_back({f + ".values", "multipliers must be positive"});
                    break;
                }
                p.values.push_back(v.get<double>());
            }
        }
        out.push_back(std::move(p));
    }
    if (diags.size() != before) return std::nullopt;
    return out;
}

}  // namespace

const char* to_string(Mode m) noexcept {
    switch (m) {
        case Mode::speed: return "speed";
        case Mode::cost: return "cost";
        case Mode::both: return "both";
    }
    return "?";
}

std::optional<RunPlan> plan_from_json(const json& doc, const Catalog& catalog, std::vector<Diagnostic>& diags) {
    const std::size_t before = diags.size();
    if (!doc.is_object()) {
        diags.push_back({"", "config must be an object"});
        return std::nullopt;
    }
    for (const auto& [key, _] : doc.items())
        if (std::find(std::begin(kTopLevelKeys), std::end(kTopLevelKeys), key) == std::end(kTopLevelKeys))
            diags.push_back({key, "unknown key"});

    std::optional<ProblemPreset> problem;
    if (!doc.contains("problem")) {
        diags.push_back({"problem", "missing"});
    } else if (doc.at("problem").is_string()) {
        const auto name = doc.at("problem").get<std::string>();
        if (const auto* found = catalog.find_problem(name)) problem = *found;
        else diags.push_back({"problem", "unknown problem preset '" + name + "'"});
    } else {
        problem = problem_from_json(doc.at("problem"), "problem", diags);
    }

    std::optional<HardwarePreset> hardware;
    if (!doc.contains("hardware")) {
        diags.push_back({"hardware", "missing"});
    } else if (doc.at("hardware").is_string()) {
        const auto name = doc.at("hardware").get<std::string>();
        if (const auto* found = catalog.find_hardware(name)) hardware = *found;
        else diags.push_back({"hardware", "unknown hardware preset '" + name + "'"});
    } else {
        hardware = hardware_from_json(doc.at("hardware"), "hardware", diags);
    }

    Mode mode = Mode::both;
    if (doc.contains("mode")) {
        const json& m = doc.at("mode");
        const std::string s = m.is_string() ? m.get<std::string>() : std::string();
        if (s == "speed") mode = Mode::speed;
        else if (s == "cost") mode = Mode::cost;
        else if (s == "both") mode = Mode::both;
        else diags.push_back({"mode", "must be \"speed\", \"cost\" or \"both\""});
    }

    std::vector<double> fixed_sizes;
    if (doc.contains("fixed_sizes")) {
        const json& f = doc.at("fixed_sizes");
        if (!f.is_array()) {
            diags.push_back({"fixed_sizes", "must be a list of log10 sizes"});
        } else {
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (!f[i].is_number() || !(f[i].get<double>() >= 0.0) || !std::isfinite(f[i].get<double>())) {
                    diags.push_back({"fixed_sizes[" + std::to_string(i) + "]", "must be a finite log10 size >= 0"});
                    continue;
                }
                fixed_sizes.push_back(f[i].get<double>());
            }
        }
    }

    std::optional<double> curve_start, curve_end;
    double curve_step = 0.1;
    if (doc.contains("curves")) {
        const json& c = doc.at("curves");
        if (!c.is_object()) {
            diags.push_back({"curves", "must be an object"});
        } else {
            curve_start = optional_number_field(c, "start", "curves", diags);
            curve_end = optional_number_field(c, "end", "curves", diags);
            if (auto st = optional_number_field(c, "step", "curves", diags)) {
                if (*st > 0.0 && std::isfinite(*st)) curve_step = *st;
                else diags.push_back({"curves.step", "must be positive"});
            }
        }
    }

    std::optional<SweepRequest> sweep;
    if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
        const json& sw = doc.at("sweep");
        if (!sw.is_object()) {
            diags.push_back({"sweep", "must be an object"});
        } else {
            SweepRequest req;
            bool ok = true;
            if (auto target = optional_number_field(sw, "target_size_log10", "sweep", diags)) {
                req.target_size_log10 = *target;
                if (!(*target >= 0.0) || !std::isfinite(*target)) {
                    diags.push_back({"sweep.target_size_log10", "must be a finite log10 size >= 0"});
                    ok = false;
                }
            } else {
                if (!sw.contains("target_size_log10")) diags.push_back({"sweep.target_size_log10", "missing"});
                ok = false;
            }
            if (sw.contains("criterion")) {
                if (auto c = criterion_from(sw.at("criterion"), "sweep.criterion", diags)) req.criterion = *c;
                else ok = false;
            }
            if (sw.contains("perturbations")) {
                if (auto ps = perturbations_from(sw.at("perturbations"), diags)) req.perturbations = std::move(*ps);
                else ok = false;
            } else {
                req.perturbations = default_perturbations();
            }
            if (ok) sweep = std::move(req);
        }
    }

    OutputFormat format = OutputFormat::json;
    std::string output_path;
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        if (!o.is_object()) {
            diags.push_back({"output", "must be an object"});
        } else {
            if (o.contains("format")) {
                const std::string f = o.at("format").is_string() ? o.at("format").get<std::string>() : "";
                if (f == "csv") format = OutputFormat::csv;
                else if (f == "json") format = OutputFormat::json;
                else diags.push_back({"output.format", "must be \"csv\" or \"json\""});
            }
            if (o.contains("path")) {
                if (o.at("path").is_string()) output_path = o.at("path").get<std::string>();
                else diags.push_back({"output.path", "must be a string"});
            }
        }
    }

    const json overrides = doc.contains("overrides") ? doc.at("overrides") : json::object();
    std::optional<ModelParams> params;
    if (problem && hardware) {
        if (hardware->roadmap_ref.empty() && !(overrides.is_object() && overrides.contains("roadmap")))
            diags.push_back({"hardware.roadmap_ref", "inline hardware needs roadmap_ref or overrides.roadmap"});
        else
            params = resolve_params(*problem, *hardware, catalog, overrides, diags);
    }
    if (diags.size() != before || !params) return std::nullopt;

    CurveWindow window{curve_start.value_or(params->t0), curve_end.value_or(params->t0 + kDefaultCurveSpan),
                       curve_step};
    if (!(window.start < window.end) || !std::isfinite(window.start) || !std::isfinite(window.end))
        diags.push_back({"curves", "start must precede end"});

    RunPlan plan{
        .problem_name = problem->name,
        .hardware_name = hardware->name,
        .params = std::move(*params),
        .mode = mode,
        .fixed_sizes = std::move(fixed_sizes),
        .curves = window,
        .sweep = std::move(sweep),
        .format = format,
        .output_path = std::move(output_path),
    };
    if (plan.sweep) {
        try {
            check_sweep(sweep_spec(plan));
        } catch (const InvalidArgument& e) {
            diags.push_back({"sweep", e.what()});
        }
    }
    if (diags.size() != before) return std::nullopt;
    return plan;
}

std::vector<Diagnostic> validate_config(const json& doc, const Catalog& catalog) {
    std::vector<Diagnostic> diags;
    plan_from_json(doc, catalog, diags);
    return diags;
}

SweepSpec sweep_spec(const RunPlan& plan) {
    if (!plan.sweep) throw InvalidArgument("config has no sweep section");
    return SweepSpec{
        .baseline = plan.params,
        .target_size_log10 = plan.sweep->target_size_log10,
        .perturbations = plan.sweep->perturbations,
        .criterion = plan.sweep->criterion,
    };
}

Evaluation evaluate(const RunPlan& plan) {
    SolveOptions options;
    options.solve_speed = plan.mode != Mode::cost;
    options.solve_cost = plan.mode != Mode::speed;

    Evaluation ev{
        .result = solve_qea(plan.params, options),
        .fixed = {},
        .curves = sample_curves(plan.params, plan.curves.start, plan.curves.end, plan.curves.step),
    };
    for (double n : plan.fixed_sizes) {
        FixedSizeResult f;
        f.log10_n = n;
        if (options.solve_speed) f.speed_year = advantage_year_for_size(plan.params, n, Criterion::speed, options);
        if (options.solve_cost) f.cost_year = advantage_year_for_size(plan.params, n, Criterion::cost, options);
        ev.fixed.push_back(f);
    }
    return ev;
}

ordered_json params_json(const ModelParams& p) {
    ordered_json j;
    j["classical_runtime"] = p.classical_runtime.source();
    j["quantum_runtime"] = p.quantum_runtime.source();
    j["classical_work"] = p.effective_classical_work().to_string();
    j["quantum_work"] = p.effective_quantum_work().to_string();
    j["connectivity_penalty"] = p.connectivity_penalty.source();
    j["qps"] = to_string(p.qps);
    j["hws"] = json_number(p.hws);
    j["qir_pct"] = json_number(p.qir_pct);
    j["plqr"] = json_number(p.plqr);
    j["rir_pct"] = json_number(p.rir_pct);
    j["processors_log10"] = json_number(p.processors_log10);
    j["cir_pct"] = json_number(p.cir_pct);
    j["cost_factor_log10"] = json_number(p.cost_factor_log10);
    j["t0"] = json_number(p.t0);
    j["roadmap"] = to_json(p.roadmap);
    return j;
}

ordered_json summary_json(const RunPlan& plan, const Evaluation& ev) {
    auto put = [](ordered_json& j, const std::optional<Crossover>& x, const char* status, const char* t,
                  const char* t_year, const char* n) {
        if (!x) {
            j[status] = nullptr;
            j[t] = nullptr;
            j[t_year] = nullptr;
            j[n] = nullptr;
            return;
        }
        j[status] = to_string(x->status);
        j[t] = optional_year(x->t_star);
        j[t_year] = x->t_star ? ordered_json(summary_year(*x->t_star)) : ordered_json(nullptr);
        j[n] = json_finite_or_null(x->n_star_log10);
    };

    ordered_json j;
    j["problem"] = plan.problem_name;
    j["hardware"] = plan.hardware_name;
    j["mode"] = to_string(plan.mode);
    put(j, ev.result.speed, "status", "t_star", "t_star_year", "n_star_log10");
    put(j, ev.result.cost, "cost_status", "t_c_star", "t_c_star_year", "n_c_star_log10");
    j["warnings"] = ev.result.warnings;
    ordered_json fixed = ordered_json::array();
    for (const auto& f : ev.fixed) {
        ordered_json e;
        e["log10_n"] = json_number(f.log10_n);
        e["year"] = optional_year(f.speed_year);
        e["cost_year"] = optional_year(f.cost_year);
        fixed.push_back(std::move(e));
    }
    j["fixed_sizes"] = std::move(fixed);
    j["params"] = params_json(plan.params);
    return j;
}

std::string curves_csv(const Curves& c) {
    std::string out = "year,adv_log10n,feas_log10n,advcost_log10n\n";
    for (std::size_t i = 0; i < c.adv.size(); ++i) {
        out += shortest(tidy_year(c.adv[i].t));
        out += ',' + csv_field(c.adv[i].log10_n);
        out += ',' + csv_field(c.feas[i].log10_n);
        out += ',' + csv_field(c.adv_cost[i].log10_n);
        out += '\n';
    }
    return out;
}

ordered_json curves_json(const Curves& c) {
    ordered_json j;
    ordered_json years = ordered_json::array(), adv = ordered_json::array(), feas = ordered_json::array(),
                 cost = ordered_json::array();
    for (std::size_t i = 0; i < c.adv.size(); ++i) {
        years.push_back(tidy_year(c.adv[i].t));
        adv.push_back(optional_number(c.adv[i].log10_n));
        feas.push_back(optional_number(c.feas[i].log10_n));
        cost.push_back(optional_number(c.adv_cost[i].log10_n));
    }
    j["year"] = std::move(years);
    j["adv_log10n"] = std::move(adv);
    j["feas_log10n"] = std::move(feas);
    j["advcost_log10n"] = std::move(cost);
    return j;
}

ordered_json sweep_row_json(const SweepRow& row) {
    ordered_json j;
    j["parameter"] = row.parameter_id;
    j["kind"] = row.kind == PerturbationKind::scale ? "scale" : "set";
    j["setting"] = json_number(row.setting);
    j["perturbed_value"] = json_number(row.perturbed_value);
    j["clamped"] = row.clamped;
    j["year"] = optional_number(row.year);
    j["delta_years"] = optional_number(row.delta_years);
    return j;
}

std::string sweep_csv_header() { return "parameter,kind,setting,perturbed_value,clamped,year,delta_years\n"; }

std::string sweep_csv_row(const SweepRow& row) {
    std::string out = row.parameter_id;
    out += row.kind == PerturbationKind::scale ? ",scale," : ",set,";
    out += shortest(row.setting) + ',' + shortest(row.perturbed_value) + ',';
    out += row.clamped ? "true," : "false,";
    out += csv_field(row.year) + ',' + csv_field(row.delta_years) + '\n';
    return out;
}

std::string sweep_csv(const SweepReport& report) {
    std::string out = sweep_csv_header();
    for (const auto& row : report.rows) out += sweep_csv_row(row);
    return out;
}

ordered_json sweep_json(const SweepReport& report) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) rows.push_back(sweep_row_json(row));
    ordered_json j;
    j["rows"] = std::move(rows);
    try {
        j["spread"] = spread(report);
    } catch (const UndefinedSpread&) {
        j["spread"] = nullptr;
    }
    return j;
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& diags) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : diags) {
        ordered_json e;
        e["field"] = d.field;
        e["message"] = d.message;
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace qea
