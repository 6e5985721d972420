#include "fixtures.hpp"

#include "qea/error.hpp"
#include "qea/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace qea;

namespace {

Roadmap logical(std::vector<RoadmapPoint> pts, Extrapolation e = Extrapolation::exponential) {
    return Roadmap("synthetic", QubitKind::logical, e, std::move(pts));
}

// Feas grows linearly, n = 10 (t - 2025); Adv is n = 50 throughout.
ModelParams linear_feasibility() {
    ModelParams p = fixture::params("n^2 / procs", "50 * n", QpsKind::linear);
    p.roadmap = logical({{2026, 10, ""}, {2027, 20, ""}}, Extrapolation::linear);
    return p;
}

}  // namespace

TEST_CASE("already achieved") {
    ModelParams p = fixture::params("n / procs", "sqrt(n)");
    const QeaResult r = solve_qea(p);
    REQUIRE(r.speed);
    CHECK(r.speed->status == QeaStatus::already_achieved);
    CHECK(r.speed->t_star == p.t0);
    CHECK(r.warnings.empty());
    CHECK(std::string(to_string(r.speed->status)) == "AlreadyAchieved");
}

TEST_CASE("synthetic linear crossing") {
    const ModelParams p = linear_feasibility();
    CHECK(advantage_size_at(p, 2027.3) == doctest::Approx(std::log10(50.0)));
    const QeaResult r = solve_qea(p);
    REQUIRE(r.speed);
    CHECK(r.speed->status == QeaStatus::advantage_at);
    CHECK(std::abs(*r.speed->t_star - 2030.0) <= 1e-3);
    CHECK(r.speed->n_star_log10 == doctest::Approx(std::log10(50.0)));
    CHECK(r.speed->bracket_lo <= *r.speed->t_star);
    CHECK(*r.speed->t_star <= r.speed->bracket_hi);
    CHECK(qea_gap(p, *r.speed->t_star, Criterion::speed) >= 0.0);
    CHECK(qea_gap(p, *r.speed->t_star - 1e-3, Criterion::speed) < 0.0);
    const auto& gaps = r.speed->bisection_gaps;
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(std::abs(gaps[i]) <= std::abs(gaps[i - 1]));
}

TEST_CASE("scan granularity does not move the answer") {
    for (const char* hw : {"IBM", "IonQ", "QuEra"}) {
        const ModelParams p = fixture::preset("Factoring", hw);
        SolveOptions coarse;
        coarse.scan_step = 1.0;
        coarse.solve_cost = false;
        SolveOptions fine = coarse;
        fine.scan_step = 0.25;
        CHECK(std::abs(*solve_qea(p, coarse).speed->t_star - *solve_qea(p, fine).speed->t_star) <= 1e-2);
    }
}

TEST_CASE("no advantage by 3000") {
    ModelParams p = fixture::params("sqrt(n) / procs", "n");
    const QeaResult r = solve_qea(p);
    CHECK(r.speed->status == QeaStatus::no_advantage_by_3000);
    CHECK(!r.speed->t_star);
    CHECK(r.speed->n_star_log10 == INFINITY);
    CHECK(std::string(to_string(r.speed->status)) == "NoAdvantageBy3000");
}

TEST_CASE("a roadmap that rises and falls is flagged non-monotone") {
    ModelParams p = fixture::params("n^2 / procs", "1000 * n", QpsKind::linear);
    p.roadmap = logical({{2025, 10, ""}, {2030, 1e6, ""}, {2035, 10, ""}});
    SolveOptions opts;
    opts.solve_cost = false;
    const QeaResult r = solve_qea(p, opts);
    CHECK(r.speed->status == QeaStatus::advantage_at);
    CHECK(*r.speed->t_star == doctest::Approx(2025.0 + 5.0 * 2.0 / 5.0).epsilon(1e-5));
    CHECK(r.speed->sign_changes == 2);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].rfind("NonMonotoneWarning", 0) == 0);
}

TEST_CASE("vendor presets") {
    const ModelParams search = fixture::preset("Search", "QuEra");
    const QeaResult r = solve_qea(search);
    CHECK(r.speed->status == QeaStatus::advantage_at);
    CHECK(std::abs(*r.speed->t_star - 2025.0) <= 1.0);
    REQUIRE(r.cost);
    CHECK(r.cost->status == QeaStatus::advantage_at);
    CHECK(*r.cost->t_star >= *r.speed->t_star);

    const ModelParams shor = fixture::preset("Factoring", "IBM");
    const auto rsa = advantage_year_for_size(shor, std::log10(2048.0));
    REQUIRE(rsa);
    CHECK(std::abs(summary_year(*rsa) - 2034) <= 2);
}

TEST_CASE("year for a fixed size") {
    ModelParams flat = fixture::params("n / procs", "sqrt(n)");
    flat.hws = 3.0;
    CHECK(!advantage_year_for_size(flat, 3.0));
    CHECK(advantage_year_for_size(flat, 6.0) == flat.t0);
    CHECK_THROWS_AS(advantage_year_for_size(flat, -1.0), InvalidArgument);

    // Adv = 2 (14 - dt) reaches 20 in 2029; Feas = 14 + dt reaches 20 in 2031
    ModelParams p = fixture::params("n / procs", "sqrt(n)", QpsKind::linear);
    p.hws = 14.0;
    p.qir_pct = -90.0;
    p.roadmap = logical({{2025, 1e14, ""}, {2031, 1e20, ""}});
    const auto year = advantage_year_for_size(p, 20.0);
    REQUIRE(year);
    CHECK(std::abs(*year - 2031.0) <= 1e-3);

    p.roadmap = logical({{2025, 1e14, ""}, {2027, 1e20, ""}});
    CHECK(std::abs(*advantage_year_for_size(p, 20.0) - 2029.0) <= 1e-3);
}

TEST_CASE("year formatting") {
    CHECK(report_year(2029.8123) == doctest::Approx(2029.8));
    CHECK(report_year(2029.96) == doctest::Approx(2030.0));
    CHECK(summary_year(2029.96) == 2029);
    CHECK(summary_year(2030.0) == 2030);
}
