#include "qea/model.hpp"

#include "qea/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace qea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kLog10Two = std::log10(2.0);
const double kLog10Three = std::log10(3.0);
// Largest log10 whose linear value is still a finite double.
constexpr double kMaxLinearLog10 = 308.25;

LogValue log_value(double lg) {
    if (lg == -kInf) return LogValue::zero();
    return LogValue::from_log10(lg);
}

// log10 of an expression, with overflow mapped to +inf and domain errors to NaN.
double eval_side(const Expression& e, const Bindings& b) {
    try {
        return e.eval_log10(b).log10();
    } catch (const OverflowError&) {
        return kInf;
    } catch (const DomainError&) {
        return kNaN;
    }
}

double rate_shift_log10(double pct, double dt) {
    return dt * std::log10(1.0 + pct / 100.0);
}

// Geometric grid over [1e-3, cap] plus 0, descending. 20 points per decade.
const std::vector<double>& size_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        constexpr int kPerDecade = 20;
        const int top = static_cast<int>(std::round(std::log10(kSizeCapLog10) * kPerDecade));
        for (int k = top; k >= -3 * kPerDecade; --k)
            g.push_back(std::pow(10.0, static_cast<double>(k) / kPerDecade));
        g.front() = kSizeCapLog10;
        g.push_back(0.0);
        return g;
    }();
    return grid;
}

double final_crossing(const std::function<double(double)>& margin) {
    const auto& grid = size_grid();
    std::size_t i = 0;
    double m = kNaN;
    // Sizes whose runtimes overflow even in log space are skipped from above
    // until the comparison becomes decidable.
    for (; i < grid.size(); ++i) {
        m = margin(grid[i]);
        if (!std::isnan(m)) break;
    }
    if (i == grid.size())
        throw NoConvergence("runtime comparison undecidable at every size", 0.0, kSizeCapLog10);
    if (!(m >= 0.0)) return kInf;

    for (std::size_t k = i + 1; k < grid.size(); ++k) {
        const double l = grid[k];
        if (margin(l) >= 0.0) continue;
        double lo = l;
        double hi = grid[k - 1];
        for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (margin(mid) >= 0.0) hi = mid;
            else lo = mid;
        }
        return hi;
    }
    return 0.0;
}

}  // namespace

const char* to_string(QpsKind k) noexcept {
    switch (k) {
        case QpsKind::exponential: return "exponential";
        case QpsKind::linear: return "linear";
        case QpsKind::logarithmic: return "logarithmic";
    }
    return "?";
}

std::optional<QpsKind> qps_from_string(std::string_view s) noexcept {
    if (s == "exponential") return QpsKind::exponential;
    if (s == "linear") return QpsKind::linear;
    if (s == "logarithmic") return QpsKind::logarithmic;
    return std::nullopt;
}

double qps_forward_log10(QpsKind kind, double log10_q) noexcept {
    switch (kind) {
        case QpsKind::exponential:
            // n = 2^q
            if (log10_q == -kInf) return 0.0;
            if (log10_q > kMaxLinearLog10) return kInf;
            return std::pow(10.0, log10_q) * kLog10Two;
        case QpsKind::linear: return log10_q;
        case QpsKind::logarithmic: {
            // n = log2(q); sizes below 1 are not meaningful but stay ordered
            const double n = log10_q / kLog10Two;
            return n > 0.0 ? std::log10(n) : -kInf;
        }
    }
    return kNaN;
}

double qps_inverse_log10(QpsKind kind, double log10_n) noexcept {
    switch (kind) {
        case QpsKind::exponential: {
            // q = log2(n)
            const double q = log10_n / kLog10Two;
            return q > 0.0 ? std::log10(q) : -kInf;
        }
        case QpsKind::linear: return log10_n;
        case QpsKind::logarithmic:
            // q = 2^n
            if (log10_n > kMaxLinearLog10) return kInf;
            return std::pow(10.0, log10_n) * kLog10Two;
    }
    return kNaN;
}

double compose_slowdown(const SlowdownBreakdown& b) {
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParams(field, "must be positive");
    };
    positive(b.gate_time_ns, "gate_time_ns");
    positive(b.classical_clock_ghz, "classical_clock_ghz");
    positive(b.gate_overhead, "gate_overhead");
    positive(b.alg_constant_ratio, "alg_constant_ratio");
    // gate time [ns] * clock [GHz] = classical cycles per quantum gate
    return std::log10(b.gate_time_ns) + std::log10(b.classical_clock_ghz) +
           std::log10(b.gate_overhead) + std::log10(b.alg_constant_ratio);
}

Expression ModelParams::effective_classical_work() const {
    if (classical_work) return *classical_work;
    return classical_runtime.substitute(Variable::procs, 1.0);
}

Expression ModelParams::effective_quantum_work() const {
    if (quantum_work) return *quantum_work;
    return quantum_runtime.times(Expression::variable(Variable::q));
}

std::vector<Diagnostic> validate(const ModelParams& p) {
    std::vector<Diagnostic> out;
    auto scope = [&](const Expression& e, VariableSet allowed, const char* field) {
        if (!e.variables().subset_of(allowed))
            out.push_back({field, "uses " + e.variables().describe() + " but only " + allowed.describe() +
                                      " are allowed"});
    };
    scope(p.classical_runtime, slots::classical_runtime, "classical_runtime");
    scope(p.quantum_runtime, slots::quantum_runtime, "quantum_runtime");
    if (p.classical_work) scope(*p.classical_work, slots::classical_work, "classical_work");
    if (p.quantum_work) scope(*p.quantum_work, slots::quantum_work, "quantum_work");
    scope(p.connectivity_penalty, slots::connectivity_penalty, "connectivity_penalty");

    auto finite = [&](double v, const char* field) {
        if (!std::isfinite(v)) {
            out.push_back({field, "must be a finite number"});
            return false;
        }
        return true;
    };
    finite(p.hws, "hws");
    finite(p.processors_log10, "processors_log10");
    finite(p.cost_factor_log10, "cost_factor_log10");
    finite(p.t0, "t0");
    if (finite(p.plqr, "plqr") && p.plqr < 3.0)
        out.push_back({"plqr", "must be at least 3 (floor 3: the smallest error-correcting code)"});
    for (auto [v, field] : {std::pair{p.qir_pct, "qir_pct"}, std::pair{p.rir_pct, "rir_pct"},
                            std::pair{p.cir_pct, "cir_pct"}}) {
        if (finite(v, field) && !(v > -100.0))
            out.push_back({field, "must be greater than -100 %/yr"});
    }
    return out;
}

void require_valid(const ModelParams& p) {
    const auto diags = validate(p);
    if (!diags.empty()) throw InvalidParams(diags.front().field, diags.front().message);
}

double effective_slowdown_log10(const ModelParams& p, double t) {
    return std::max(0.0, p.hws + rate_shift_log10(p.qir_pct, t - p.t0));
}

double effective_plqr_log10(const ModelParams& p, double t) {
    return std::max(kLog10Three, std::log10(p.plqr) + rate_shift_log10(p.rir_pct, t - p.t0));
}

double effective_processors_log10(const ModelParams& p, double t) {
    return std::max(0.0, p.processors_log10 + rate_shift_log10(p.cir_pct, t - p.t0));
}

double effective_cost_factor_log10(const ModelParams& p, double t) {
    return std::max(0.0, p.cost_factor_log10 + rate_shift_log10(p.cir_pct, t - p.t0));
}

double speed_margin_log10(const ModelParams& p, double log10_n, double t) {
    const LogValue n = log_value(log10_n);
    const double log10_q = qps_inverse_log10(p.qps, log10_n);

    Bindings classical;
    classical.set(Variable::n, n).set(Variable::procs, log_value(effective_processors_log10(p, t)));
    const double c = eval_side(p.classical_runtime, classical);

    Bindings quantum;
    quantum.set(Variable::n, n);
    const double q_rt = eval_side(p.quantum_runtime, quantum);
    double penalty = kInf;
    if (log10_q != kInf) {
        Bindings pen;
        pen.set(Variable::q, log_value(log10_q));
        penalty = eval_side(p.connectivity_penalty, pen);
    }
    const double rhs = effective_slowdown_log10(p, t) + q_rt + penalty;
    return c - rhs;
}

double cost_margin_log10(const ModelParams& p, double log10_n, double t) {
    const LogValue n = log_value(log10_n);
    const double log10_q = qps_inverse_log10(p.qps, log10_n);

    Bindings classical;
    classical.set(Variable::n, n);
    const double c = eval_side(p.effective_classical_work(), classical);

    double q_work = kInf;
    double penalty = kInf;
    if (log10_q != kInf) {
        const LogValue q = log_value(log10_q);
        Bindings quantum;
        quantum.set(Variable::n, n).set(Variable::q, q);
        q_work = eval_side(p.effective_quantum_work(), quantum);
        Bindings pen;
        pen.set(Variable::q, q);
        penalty = eval_side(p.connectivity_penalty, pen);
    }
    const double rhs = effective_cost_factor_log10(p, t) + q_work + penalty;
    return c - rhs;
}

double advantage_size_at(const ModelParams& p, double t) {
    return final_crossing([&](double l) { return speed_margin_log10(p, l, t); });
}

double cost_advantage_size_at(const ModelParams& p, double t) {
    // Work expressions are fixed for the whole search; build the defaults once.
    ModelParams resolved = p;
    resolved.classical_work = p.effective_classical_work();
    resolved.quantum_work = p.effective_quantum_work();
    return final_crossing([&](double l) { return cost_margin_log10(resolved, l, t); });
}

double feasible_size_at(const ModelParams& p, double t) {
    double log10_q = p.roadmap.log10_qubits_at(t);
    if (p.roadmap.qubit_kind() == QubitKind::physical) log10_q -= effective_plqr_log10(p, t);
    return qps_forward_log10(p.qps, log10_q);
}

Curves sample_curves(const ModelParams& p, double t_start, double t_end, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("curve step must be positive");
    if (!(t_start < t_end)) throw InvalidArgument("curve start must precede curve end");

    ModelParams resolved = p;
    resolved.classical_work = p.effective_classical_work();
    resolved.quantum_work = p.effective_quantum_work();

    auto sample = [](double t, double v) {
        return CurveSample{t, std::isfinite(v) ? std::optional<double>(v) : std::nullopt};
    };
    Curves out;
    const auto count = static_cast<std::size_t>(std::floor((t_end - t_start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = t_start + static_cast<double>(i) * step;
        out.adv.push_back(sample(t, advantage_size_at(resolved, t)));
        out.feas.push_back(sample(t, feasible_size_at(resolved, t)));
        out.adv_cost.push_back(sample(t, cost_advantage_size_at(resolved, t)));
    }
    return out;
}

}  // namespace qea
