#pragma once

#include "qea/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qea {

enum class QeaStatus { already_achieved, advantage_at, no_advantage_by_3000 };
const char* to_string(QeaStatus s) noexcept;

// Which advantage line is compared against feasibility.
enum class Criterion { speed, cost };

inline constexpr double kHorizonYear = 3000.0;

struct SolveOptions {
    double scan_step = 0.25;         // years between scan points
    double tolerance_years = 1e-3;   // bisection width
    double tail_step = 1.0;          // scan step after the first crossing
    bool solve_speed = true;
    bool solve_cost = true;
};

struct Crossover {
    QeaStatus status = QeaStatus::no_advantage_by_3000;
    // t0 when already achieved, the crossing year when found, else empty.
    std::optional<double> t_star;
    double n_star_log10 = 0.0;  // advantage line at t0
    // Scan points bracketing t_star (advantage_at only).
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    // Gap Feas - Adv at the advantageous end of each bisection step.
    std::vector<double> bisection_gaps;
    int sign_changes = 0;
};

struct QeaResult {
    std::optional<Crossover> speed;
    std::optional<Crossover> cost;
    std::vector<std::string> warnings;
};

// Feas(t) - Adv(t) (or Adv_c). NaN-free: undecidable or infinite gaps map to
// -inf unless feasibility is infinite and advantage finite.
double qea_gap(const ModelParams& p, double t, Criterion c);

Crossover solve_crossover(const ModelParams& p, Criterion c, const SolveOptions& options = {});

// Scans t0..3000 for the first year where feasibility reaches the advantage
// line, then bisects. Multiple sign changes add a warning; the first crossing
// is reported.
QeaResult solve_qea(const ModelParams& p, const SolveOptions& options = {});

// First year in [t0, 3000] at which size 10^n_log10 is both feasible and
// advantageous (quantum total <= classical total at that size).
std::optional<double> advantage_year_for_size(const ModelParams& p, double n_log10,
                                              Criterion c = Criterion::speed,
                                              const SolveOptions& options = {});

// 0.1-year resolution for reports; whole year (floor) for summaries.
double report_year(double t) noexcept;
int summary_year(double t) noexcept;

}  // namespace qea
