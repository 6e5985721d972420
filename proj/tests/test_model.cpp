#include "fixtures.hpp"
#include "oracles.hpp"

#include "qea/error.hpp"
#include "qea/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qea;

TEST_CASE("qps forward and inverse") {
    CHECK(qps_forward_log10(QpsKind::exponential, 1.0) == doctest::Approx(10.0 * std::log10(2.0)));
    CHECK(qps_forward_log10(QpsKind::linear, 1.0) == 1.0);
    CHECK(qps_forward_log10(QpsKind::logarithmic, std::log10(1024.0)) == doctest::Approx(1.0));
    CHECK(qps_inverse_log10(QpsKind::exponential, std::log10(1024.0)) == doctest::Approx(1.0));
    CHECK(qps_inverse_log10(QpsKind::logarithmic, 1.0) == doctest::Approx(10.0 * std::log10(2.0)));
    CHECK(qps_inverse_log10(QpsKind::exponential, 0.0) == -INFINITY);

    for (QpsKind k : {QpsKind::exponential, QpsKind::linear, QpsKind::logarithmic}) {
        for (double l = 0.0; l <= 100.0; l += 0.173) {
            CAPTURE(l);
            const double back = qps_forward_log10(k, qps_inverse_log10(k, l));
            if (k == QpsKind::exponential && l == 0.0) continue;  // q = 0 maps back to n = 1 exactly
            CHECK(std::abs(back - l) <= 1e-9 * std::max(1.0, l));
        }
    }
    CHECK(qps_from_string("linear") == QpsKind::linear);
    CHECK(!qps_from_string("cubic"));
}

TEST_CASE("slowdown composition") {
    CHECK(std::abs(compose_slowdown({12.0}) - 3.78) <= 0.01);
    CHECK(std::abs(compose_slowdown({600000.0}) - 8.48) <= 0.01);
    CHECK(std::abs(compose_slowdown({250.0}) - 5.10) <= 0.01);
    CHECK(compose_slowdown({1.0, 1.0, 1.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(compose_slowdown({0.0}), InvalidParams);
    CHECK_THROWS_AS(compose_slowdown({10.0, -5.0}), InvalidParams);
}

TEST_CASE("validation") {
    ModelParams p = fixture::params("n / procs", "sqrt(n)");
    CHECK(validate(p).empty());

    p.plqr = 2.0;
    auto d = validate(p);
    REQUIRE(d.size() == 1);
    CHECK(d[0].field == "plqr");
    CHECK(d[0].message.find("floor 3") != std::string::npos);
    CHECK_THROWS_AS(require_valid(p), InvalidParams);

    p = fixture::params("n / procs", "sqrt(n)");
    p.rir_pct = -100.0;
    p.hws = NAN;
    CHECK(validate(p).size() == 2);

    p = fixture::params("n / procs", "sqrt(n)");
    p.quantum_work = Expression::parse("n * q * procs", VariableSet{Variable::n, Variable::q, Variable::procs});
    d = validate(p);
    REQUIRE(d.size() == 1);
    CHECK(d[0].field == "quantum_work");
}

TEST_CASE("floors hold over a thousand years") {
    ModelParams p = fixture::params("n / procs", "sqrt(n)");
    p.hws = 4.0;
    p.qir_pct = -30.0;
    p.plqr = 500.0;
    p.rir_pct = -40.0;
    p.processors_log10 = 6.0;
    p.cir_pct = -25.0;
    p.cost_factor_log10 = 7.0;
    for (double t = p.t0; t <= p.t0 + 1000.0; t += 0.5) {
        CHECK(effective_slowdown_log10(p, t) >= 0.0);
        CHECK(effective_plqr_log10(p, t) >= std::log10(3.0));
        CHECK(effective_processors_log10(p, t) >= 0.0);
        CHECK(effective_cost_factor_log10(p, t) >= 0.0);
    }
    CHECK(effective_slowdown_log10(p, p.t0) == 4.0);
    CHECK(effective_slowdown_log10(p, p.t0 + 1000.0) == 0.0);
    CHECK(effective_plqr_log10(p, p.t0 + 1000.0) == doctest::Approx(std::log10(3.0)));
    p.qir_pct = 5.0;
    CHECK(effective_slowdown_log10(p, p.t0 + 10.0) == doctest::Approx(4.0 + 10.0 * std::log10(1.05)));
}

TEST_CASE("advantage size, closed forms") {
    ModelParams p = fixture::params("n / procs", "sqrt(n)");
    p.hws = 8.48;
    p.processors_log10 = 8.0;
    CHECK(std::abs(advantage_size_at(p, p.t0) - 32.96) <= 1e-6);

    ModelParams zero = fixture::params("n / procs", "sqrt(n)");
    CHECK(advantage_size_at(zero, zero.t0) == 0.0);

    // adding d to hws moves a square-root speedup by exactly 2d
    for (double d : {0.1, 0.5, 1.0, 3.25}) {
        ModelParams shifted = p;
        shifted.hws += d;
        CHECK(advantage_size_at(shifted, p.t0) - advantage_size_at(p, p.t0) == doctest::Approx(2.0 * d));
    }

    // ten times the processors divides the classical time by exactly ten
    ModelParams more = p;
    more.processors_log10 += 1.0;
    for (double l : {1.0, 17.5, 40.0, 300.0})
        CHECK(speed_margin_log10(more, l, p.t0) == doctest::Approx(speed_margin_log10(p, l, p.t0) - 1.0));

    ModelParams never = fixture::params("sqrt(n) / procs", "n");
    CHECK(advantage_size_at(never, never.t0) == INFINITY);
}

TEST_CASE("advantage size on the factoring preset matches a grid scan") {
    const ModelParams p = fixture::preset("Factoring", "IBM");
    oracle::Instant s{oracle::Problem::factoring, true, 3.78, 8.0, 3.78 + 8.0};
    const double want = oracle::scan_final_crossing([&](double l) { return oracle::speed_margin(s, l); }, 100.0);
    CHECK(std::abs(advantage_size_at(p, p.t0) - want) <= 1e-3 + 1e-9);
    const double want_cost = oracle::scan_final_crossing([&](double l) { return oracle::cost_margin(s, l); }, 100.0);
    CHECK(std::abs(cost_advantage_size_at(p, p.t0) - want_cost) <= 1e-3 + 1e-9);
}

TEST_CASE("feasible size") {
    ModelParams p = fixture::params("n / procs", "sqrt(n)", QpsKind::linear);
    p.plqr = 100.0;
    CHECK(feasible_size_at(p, p.t0) == doctest::Approx(1.0));
    p.qps = QpsKind::exponential;
    CHECK(feasible_size_at(p, p.t0) == doctest::Approx(10.0 * std::log10(2.0)));

    p.qps = QpsKind::linear;
    p.plqr = 400.0;
    p.rir_pct = -23.0;
    CHECK(std::pow(10.0, feasible_size_at(p, p.t0 + 10.0)) == doctest::Approx(1000.0 / (400.0 * std::pow(0.77, 10))));
    // 400 * 0.77^10 is about 29.3, so roughly 34 logical qubits
    CHECK(std::abs(std::pow(10.0, feasible_size_at(p, p.t0 + 10.0)) - 34.3) <= 0.2);
    // once plqr reaches its floor only the roadmap matters
    CHECK(feasible_size_at(p, p.t0 + 100.0) == doctest::Approx(std::log10(1000.0 / 3.0)));

    p.roadmap = fixture::flat_roadmap(50.0, QubitKind::logical);
    CHECK(feasible_size_at(p, p.t0) == doctest::Approx(std::log10(50.0)));
}

TEST_CASE("cost advantage size") {
    // C_w = n against sqrt(n) * log2(n); quantum is cheaper from n = 16 on
    ModelParams p = fixture::params("n / procs", "sqrt(n)", QpsKind::exponential);
    const double want = oracle::scan_final_crossing(
        [](double l) { return l - (l / 2.0 + oracle::log10_qubits(oracle::Problem::search, l)); }, 100.0);
    CHECK(std::abs(cost_advantage_size_at(p, p.t0) - want) <= 1e-3 + 1e-9);
    CHECK(cost_advantage_size_at(p, p.t0) == doctest::Approx(std::log10(16.0)));

    ModelParams same = fixture::params("n / procs", "sqrt(n)");
    same.classical_work = Expression::parse("n^2", slots::classical_work);
    same.quantum_work = Expression::parse("n^2", slots::quantum_work);
    CHECK(cost_advantage_size_at(same, same.t0) == 0.0);

    ModelParams grover = fixture::params("n / procs", "sqrt(n)");
    grover.cost_factor_log10 = 5.0;
    oracle::Instant s{oracle::Problem::search, false, 0.0, 0.0, 5.0};
    const double want5 = oracle::scan_final_crossing([&](double l) { return oracle::cost_margin(s, l); }, 100.0);
    CHECK(std::abs(cost_advantage_size_at(grover, grover.t0) - want5) <= 1e-3 + 1e-9);
}

TEST_CASE("undecidable comparisons raise NoConvergence") {
    ModelParams p = fixture::params("ln(0 * n) / procs", "sqrt(n)");
    CHECK_THROWS_AS(advantage_size_at(p, p.t0), NoConvergence);
}

TEST_CASE("huge sizes stay in log space") {
    // 2^n against n^3: the final crossing sits near n = 10 and the comparison
    // stays decidable up to sizes where 2^n has a million-digit exponent
    ModelParams p = fixture::params("2^n / procs", "n^3");
    const double l = advantage_size_at(p, p.t0);
    CHECK(std::pow(2.0, std::pow(10.0, l)) == doctest::Approx(std::pow(std::pow(10.0, l), 3.0)).epsilon(1e-6));
}

TEST_CASE("curve sampling") {
    ModelParams flat = fixture::params("n / procs", "sqrt(n)");
    const Curves c = sample_curves(flat, 2025, 2035, 0.5);
    REQUIRE(c.feas.size() == 21);
    for (const auto& s : c.feas) CHECK(*s.log10_n == *c.feas.front().log10_n);
    CHECK(c.adv.back().t == doctest::Approx(2035.0));

    const ModelParams grover = fixture::preset("Search", "IonQ", 2024);
    const Curves g = sample_curves(grover, 2024, 2040, 0.25);
    for (std::size_t i = 1; i < g.adv.size(); ++i) CHECK(*g.adv[i].log10_n < *g.adv[i - 1].log10_n);

    ModelParams never = fixture::params("sqrt(n) / procs", "n");
    const Curves gaps = sample_curves(never, 2025, 2026, 0.5);
    for (const auto& s : gaps.adv) CHECK(!s.log10_n);

    CHECK_THROWS_AS(sample_curves(flat, 2025, 2035, 0.0), InvalidArgument);
    CHECK_THROWS_AS(sample_curves(flat, 2035, 2025, 1.0), InvalidArgument);
}

TEST_CASE("monotone curves under declining overheads") {
    for (const char* hw : {"IBM", "IonQ", "QuEra"}) {
        for (const char* prob : {"Search", "Factoring"}) {
            CAPTURE(hw);
            CAPTURE(prob);
            const ModelParams p = fixture::preset(prob, hw);
            double adv = INFINITY, feas = -INFINITY;
            for (double t = p.t0; t <= p.t0 + 100.0; t += 1.0) {
                const double a = advantage_size_at(p, t), f = feasible_size_at(p, t);
                CHECK(a <= adv + 1e-9);
                CHECK(f >= feas - 1e-9);
                adv = a;
                feas = f;
            }
        }
    }
}
