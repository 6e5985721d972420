#pragma once

#include "qea/model.hpp"
#include "qea/solver.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qea {

enum class PerturbationKind {
    set_value,  // replace the parameter with each value
    scale,      // multiply the underlying quantity (10^x for log parameters)
};

struct Perturbation {
    std::string parameter_id;
    PerturbationKind kind = PerturbationKind::set_value;
    std::vector<double> values;
};

struct SweepSpec {
    ModelParams baseline;
    double target_size_log10 = 0.0;
    std::vector<Perturbation> perturbations;
    Criterion criterion = Criterion::speed;
};

struct SweepRow {
    std::string parameter_id;  // "baseline" for the reference row
    PerturbationKind kind = PerturbationKind::set_value;
    double setting = 0.0;          // value or multiplier as requested
    double perturbed_value = 0.0;  // resulting parameter value
    bool clamped = false;          // plqr pushed up to its floor of 3
    std::optional<double> year;
    std::optional<double> delta_years;
};

struct SweepReport {
    std::vector<SweepRow> rows;  // baseline first, then input order
};

// Parameters a sweep may perturb: hws, qir_pct, plqr, rir_pct,
// processors_log10, cir_pct, cost_factor_log10.
bool is_sweepable(std::string_view parameter_id) noexcept;

// Throws InvalidArgument for unknown ids, non-positive multipliers or values
// that would make the parameters invalid.
void check_sweep(const SweepSpec& spec);

// Rates {QIR, RIR, CIR} over {0, -5, -10, -20, -30} %/yr; slowdown,
// processors and PLQR scaled by 0.1 and 10.
std::vector<Perturbation> default_perturbations();

// One-at-a-time sweep. Rows are computed independently (on up to `workers`
// threads) and delivered to `on_row`, if given, in report order.
SweepReport run_sweep(const SweepSpec& spec, const std::function<void(const SweepRow&)>& on_row = {},
                      unsigned workers = 0);

// Max year - min year over rows that have a year. Throws UndefinedSpread if
// none do.
double spread(const SweepReport& report);

}  // namespace qea
