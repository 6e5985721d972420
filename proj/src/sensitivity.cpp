#include "qea/sensitivity.hpp"

#include "qea/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <thread>

namespace qea {

namespace {

struct ParameterInfo {
    const char* id;
    double ModelParams::*field;
    bool log_scaled;  // stored as log10 of the quantity being scaled
};

constexpr std::array<ParameterInfo, 7> kParameters{{
    {"hws", &ModelParams::hws, true},
    {"qir_pct", &ModelParams::qir_pct, false},
    {"plqr", &ModelParams::plqr, false},
    {"rir_pct", &ModelParams::rir_pct, false},
    {"processors_log10", &ModelParams::processors_log10, true},
    {"cir_pct", &ModelParams::cir_pct, false},
    {"cost_factor_log10", &ModelParams::cost_factor_log10, true},
}};

const ParameterInfo* find_parameter(std::string_view id) {
    for (const auto& p : kParameters)
        if (id == p.id) return &p;
    return nullptr;
}

struct Job {
    const ParameterInfo* info;
    PerturbationKind kind;
    double setting;
};

SweepRow apply(const Job& job, ModelParams& out) {
    SweepRow row;
    row.parameter_id = job.info->id;
    row.kind = job.kind;
    row.setting = job.setting;
    double& field = out.*(job.info->field);
    if (job.kind == PerturbationKind::set_value) {
        field = job.setting;
    } else if (job.info->log_scaled) {
        field += std::log10(job.setting);
    } else {
        field *= job.setting;
    }
    if (job.info->field == &ModelParams::plqr && field < 3.0) {
        field = 3.0;
        row.clamped = true;
    }
    row.perturbed_value = field;
    return row;
}

std::vector<Job> expand(const SweepSpec& spec) {
    std::vector<Job> jobs;
    for (const auto& p : spec.perturbations) {
        const ParameterInfo* info = find_parameter(p.parameter_id);
        for (double v : p.values) jobs.push_back({info, p.kind, v});
    }
    return jobs;
}

}  // namespace

bool is_sweepable(std::string_view parameter_id) noexcept {
    return find_parameter(parameter_id) != nullptr;
}

void check_sweep(const SweepSpec& spec) {
    if (!(spec.target_size_log10 >= 0.0) || !std::isfinite(spec.target_size_log10))
        throw InvalidArgument("target_size_log10 must be a finite number >= 0");
    for (const auto& p : spec.perturbations) {
        if (!is_sweepable(p.parameter_id))
            throw InvalidArgument("unknown sweep parameter '" + p.parameter_id + "'");
        for (double v : p.values) {
            if (!std::isfinite(v)) throw InvalidArgument(p.parameter_id + ": values must be finite");
            if (p.kind == PerturbationKind::scale && !(v > 0.0))
                throw InvalidArgument(p.parameter_id + ": multipliers must be positive");
        }
    }
    for (const Job& job : expand(spec)) {
        ModelParams params = spec.baseline;
        apply(job, params);
        if (auto diags = validate(params); !diags.empty())
            throw InvalidArgument("perturbation of " + std::string(job.info->id) + " to " +
                                  std::to_string(job.setting) + ": " + diags.front().message);
    }
}

std::vector<Perturbation> default_perturbations() {
    const std::vector<double> rates{0.0, -5.0, -10.0, -20.0, -30.0};
    const std::vector<double> scales{0.1, 10.0};
    return {
        {"qir_pct", PerturbationKind::set_value, rates},
        {"rir_pct", PerturbationKind::set_value, rates},
        {"cir_pct", PerturbationKind::set_value, rates},
        {"hws", PerturbationKind::scale, scales},
        {"processors_log10", PerturbationKind::scale, scales},
        {"plqr", PerturbationKind::scale, scales},
    };
}

SweepReport run_sweep(const SweepSpec& spec, const std::function<void(const SweepRow&)>& on_row,
                      unsigned workers) {
    require_valid(spec.baseline);
    check_sweep(spec);

    SweepReport report;
    SweepRow base;
    base.parameter_id = "baseline";
    base.year = advantage_year_for_size(spec.baseline, spec.target_size_log10, spec.criterion);
    if (base.year) base.delta_years = 0.0;
    report.rows.push_back(base);
    if (on_row) on_row(base);

    auto compute = [&spec, baseline_year = base.year](const Job& job) {
        ModelParams params = spec.baseline;
        SweepRow row = apply(job, params);
        row.year = advantage_year_for_size(params, spec.target_size_log10, spec.criterion);
        if (row.year && baseline_year) row.delta_years = *row.year - *baseline_year;
        return row;
    };

    const std::vector<Job> jobs = expand(spec);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    if (workers <= 1) {
        for (const Job& job : jobs) {
            report.rows.push_back(compute(job));
            if (on_row) on_row(report.rows.back());
        }
        return report;
    }

    // Bounded window of in-flight rows; results are collected in input order.
    std::vector<std::future<SweepRow>> pending;
    std::size_t next = 0;
    auto launch = [&] {
        while (next < jobs.size() && pending.size() < workers)
            pending.push_back(std::async(std::launch::async, compute, jobs[next++]));
    };
    launch();
    while (!pending.empty()) {
        report.rows.push_back(pending.front().get());
        pending.erase(pending.begin());
        if (on_row) on_row(report.rows.back());
        launch();
    }
    return report;
}

double spread(const SweepReport& report) {
    std::optional<double> lo, hi;
    for (const auto& row : report.rows) {
        if (!row.year) continue;
        lo = lo ? std::min(*lo, *row.year) : *row.year;
        hi = hi ? std::max(*hi, *row.year) : *row.year;
    }
    if (!lo) throw UndefinedSpread("no sweep row has an advantage year");
    return *hi - *lo;
}

}  // namespace qea
