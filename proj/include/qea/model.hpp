#pragma once

#include "qea/expression.hpp"
#include "qea/roadmap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qea {

// How many logical qubits a problem of size n needs: n = 2^q, n = q or
// n = log2(q).
enum class QpsKind { exponential, linear, logarithmic };

const char* to_string(QpsKind k) noexcept;
std::optional<QpsKind> qps_from_string(std::string_view s) noexcept;

// log10 of the largest problem size solvable with 10^log10_q logical qubits.
double qps_forward_log10(QpsKind kind, double log10_q) noexcept;
// log10 of the logical qubits needed for a problem of size 10^log10_n.
double qps_inverse_log10(QpsKind kind, double log10_n) noexcept;

struct SlowdownBreakdown {
    double gate_time_ns = 0.0;
    double classical_clock_ghz = 5.0;
    double gate_overhead = 100.0;
    double alg_constant_ratio = 1.0;
};

// log10 of (gate time / classical cycle time) * gate overhead * constant ratio.
double compose_slowdown(const SlowdownBreakdown& b);

struct ModelParams {
    Expression classical_runtime;                 // over n, procs
    Expression quantum_runtime;                   // over n
    std::optional<Expression> classical_work;     // over n; default C(n, 1)
    std::optional<Expression> quantum_work;       // over n, q; default Q(n) * q
    Expression connectivity_penalty;              // over q
    QpsKind qps = QpsKind::linear;
    double hws = 0.0;                 // log10 hardware slowdown
    double qir_pct = 0.0;             // signed %/yr change of the slowdown
    double plqr = 3.0;                // physical qubits per logical qubit
    double rir_pct = 0.0;             // signed %/yr change of plqr
    double processors_log10 = 0.0;    // p, cost-equivalent classical processors 10^p
    double cir_pct = 0.0;             // signed %/yr, applied to processors and cost factor
    double cost_factor_log10 = 0.0;   // cf
    Roadmap roadmap;
    double t0 = 2025.0;

    Expression effective_classical_work() const;
    Expression effective_quantum_work() const;
};

struct Diagnostic {
    std::string field;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::vector<Diagnostic> validate(const ModelParams& params);
// Throws InvalidParams for the first diagnostic.
void require_valid(const ModelParams& params);

// Time-dependent quantities, all log10 and floored (slowdown >= 1,
// plqr >= 3, processors >= 1, cost factor >= 1).
double effective_slowdown_log10(const ModelParams& p, double t);
double effective_plqr_log10(const ModelParams& p, double t);
double effective_processors_log10(const ModelParams& p, double t);
double effective_cost_factor_log10(const ModelParams& p, double t);

// log10(classical total) - log10(quantum total) at size 10^log10_n and year t.
// >= 0 means quantum is at least as fast (speed) or as cheap (cost). NaN when
// the comparison is undecidable (both sides overflow, or a formula leaves its
// domain at this size).
double speed_margin_log10(const ModelParams& p, double log10_n, double t);
double cost_margin_log10(const ModelParams& p, double log10_n, double t);

// Upper end of the size search, in log10(n).
inline constexpr double kSizeCapLog10 = 1.0e6;

// Adv(t): log10 of the smallest size from which quantum stays at least as fast
// up to the size cap. 0 when quantum wins everywhere, +inf when it loses at
// the cap. Throws NoConvergence if no size in the range gives a decidable
// comparison.
double advantage_size_at(const ModelParams& p, double t);
// Adv_c(t): same with work expressions and the cost factor.
double cost_advantage_size_at(const ModelParams& p, double t);
// Feas(t): log10 of the largest size the projected logical qubits can hold.
// -inf when nothing is feasible.
double feasible_size_at(const ModelParams& p, double t);

struct CurveSample {
    double t = 0.0;
    std::optional<double> log10_n;  // nullopt marks a gap (no finite value)
};

struct Curves {
    std::vector<CurveSample> adv;
    std::vector<CurveSample> feas;
    std::vector<CurveSample> adv_cost;
};

// Evaluates the three curves at t_start, t_start + step, ... <= t_end.
Curves sample_curves(const ModelParams& p, double t_start, double t_end, double step);

}  // namespace qea
