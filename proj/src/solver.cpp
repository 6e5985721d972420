#include "qea/solver.hpp"

#include "qea/error.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace qea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Year grid t0, t0 + step, ..., ending exactly at the horizon.
template <typename Visit>
void scan_years(double t0, double step, Visit&& visit) {
    if (!(step > 0.0)) throw InvalidArgument("scan step must be positive");
    double prev = t0;
    for (long k = 1;; ++k) {
        double t = t0 + static_cast<double>(k) * step;
        const bool last = t >= kHorizonYear;
        if (last) t = kHorizonYear;
        if (t <= prev) break;
        if (!visit(prev, t)) return;
        prev = t;
        if (last) break;
    }
}

// Shrinks [lo, hi] with pred(lo) false and pred(hi) true; returns hi.
double bisect(double lo, double hi, double tolerance, const std::function<bool(double)>& pred,
              const std::function<void(double)>& on_hi = {}) {
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) {
            hi = mid;
            if (on_hi) on_hi(mid);
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

const char* to_string(QeaStatus s) noexcept {
    switch (s) {
        case QeaStatus::already_achieved: return "AlreadyAchieved";
        case QeaStatus::advantage_at: return "AdvantageAt";
        case QeaStatus::no_advantage_by_3000: return "NoAdvantageBy3000";
    }
    return "?";
}

double qea_gap(const ModelParams& p, double t, Criterion c) {
    const double feas = feasible_size_at(p, t);
    const double adv = c == Criterion::speed ? advantage_size_at(p, t) : cost_advantage_size_at(p, t);
    if (adv == kInf) return -kInf;
    if (feas == kInf) return kInf;
    return feas - adv;
}

Crossover solve_crossover(const ModelParams& p, Criterion c, const SolveOptions& options) {
    require_valid(p);
    ModelParams resolved = p;
    resolved.classical_work = p.effective_classical_work();
    resolved.quantum_work = p.effective_quantum_work();
    auto gap = [&](double t) { return qea_gap(resolved, t, c); };

    Crossover out;
    out.n_star_log10 = c == Criterion::speed ? advantage_size_at(resolved, p.t0)
                                             : cost_advantage_size_at(resolved, p.t0);
    const double g0 = gap(p.t0);
    if (g0 >= 0.0) {
        out.status = QeaStatus::already_achieved;
        out.t_star = p.t0;
        return out;
    }

    scan_years(p.t0, options.scan_step, [&](double lo, double hi) {
        if (!(gap(hi) >= 0.0)) return true;
        out.status = QeaStatus::advantage_at;
        out.sign_changes = 1;
        out.bracket_lo = lo;
        out.bracket_hi = hi;
        out.bisection_gaps.push_back(gap(hi));
        out.t_star = bisect(lo, hi, options.tolerance_years, [&](double t) { return gap(t) >= 0.0; },
                            [&](double t) { out.bisection_gaps.push_back(gap(t)); });
        return false;
    });
    if (!out.t_star) return out;

    // Later sign changes only feed the non-monotonicity warning.
    bool previous_ok = true;
    scan_years(out.bracket_hi, options.tail_step, [&](double, double hi) {
        const bool ok = gap(hi) >= 0.0;
        if (ok != previous_ok) ++out.sign_changes;
        previous_ok = ok;
        return true;
    });
    return out;
}

QeaResult solve_qea(const ModelParams& p, const SolveOptions& options) {
    QeaResult r;
    auto warn = [&](const Crossover& x, const char* which) {
        if (x.sign_changes > 1)
            r.warnings.push_back(std::string("NonMonotoneWarning: ") + which + " gap changes sign " +
                                 std::to_string(x.sign_changes) + " times before " +
                                 std::to_string(static_cast<int>(kHorizonYear)) +
                                 "; first crossing reported");
    };
    if (options.solve_speed) {
        r.speed = solve_crossover(p, Criterion::speed, options);
        warn(*r.speed, "speed");
    }
    if (options.solve_cost) {
        r.cost = solve_crossover(p, Criterion::cost, options);
        warn(*r.cost, "cost");
    }
    return r;
}

std::optional<double> advantage_year_for_size(const ModelParams& p, double n_log10, Criterion c,
                                              const SolveOptions& options) {
    require_valid(p);
    if (!(n_log10 >= 0.0)) throw InvalidArgument("problem size must be at least 1 (log10 >= 0)");
    ModelParams resolved = p;
    resolved.classical_work = p.effective_classical_work();
    resolved.quantum_work = p.effective_quantum_work();

    auto holds = [&](double t) {
        if (!(feasible_size_at(resolved, t) >= n_log10)) return false;
        const double m = c == Criterion::speed ? speed_margin_log10(resolved, n_log10, t)
                                               : cost_margin_log10(resolved, n_log10, t);
        return m >= 0.0;
    };

    if (holds(p.t0)) return p.t0;
    std::optional<double> year;
    scan_years(p.t0, options.scan_step, [&](double lo, double hi) {
        if (!holds(hi)) return true;
        year = bisect(lo, hi, options.tolerance_years, holds);
        return false;
    });
    return year;
}

double report_year(double t) noexcept { return std::round(t * 10.0) / 10.0; }

int summary_year(double t) noexcept { return static_cast<int>(std::floor(t)); }

}  // namespace qea
