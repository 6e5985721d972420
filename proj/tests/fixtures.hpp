#pragma once

#include "qea/model.hpp"
#include "qea/presets.hpp"

#include <string>

namespace fixture {

inline qea::Roadmap flat_roadmap(double qubits, qea::QubitKind kind = qea::QubitKind::physical) {
    return qea::Roadmap("flat", kind, qea::Extrapolation::exponential, {{2020, qubits, ""}, {2030, qubits, ""}});
}

// All rates zero, p = 0, hws = 0, P = 1, constant 1000-qubit roadmap.
inline qea::ModelParams params(const std::string& classical, const std::string& quantum,
                               qea::QpsKind qps = qea::QpsKind::exponential, const std::string& penalty = "1") {
    using namespace qea;
    return ModelParams{
        .classical_runtime = Expression::parse(classical, slots::classical_runtime),
        .quantum_runtime = Expression::parse(quantum, slots::quantum_runtime),
        .classical_work = std::nullopt,
        .quantum_work = std::nullopt,
        .connectivity_penalty = Expression::parse(penalty, slots::connectivity_penalty),
        .qps = qps,
        .hws = 0.0,
        .qir_pct = 0.0,
        .plqr = 3.0,
        .rir_pct = 0.0,
        .processors_log10 = 0.0,
        .cir_pct = 0.0,
        .cost_factor_log10 = 0.0,
        .roadmap = flat_roadmap(1000.0),
        .t0 = 2025.0,
    };
}

inline const qea::Catalog& catalog() {
    static const qea::Catalog c = qea::load_presets(QEA_DATA_DIR);
    return c;
}

// Preset pair with t0 pinned so results do not depend on the calendar.
inline qea::ModelParams preset(const std::string& problem, const std::string& hardware, double t0 = 2025.0) {
    const auto& c = catalog();
    return qea::build_params(*c.find_problem(problem), *c.find_hardware(hardware), c, {{"t0", t0}});
}

}  // namespace fixture
