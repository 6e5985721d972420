#include "fixtures.hpp"

#include "qea/error.hpp"
#include "qea/presets.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace qea;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Copy of the bundled data directory that a test may damage.
struct ScratchData {
    fs::path dir;
    explicit ScratchData(const std::string& name) : dir(fs::temp_directory_path() / name) {
        fs::remove_all(dir);
        fs::copy(QEA_DATA_DIR, dir, fs::copy_options::recursive);
    }
    ~ScratchData() { fs::remove_all(dir); }
    void write(const std::string& rel, const std::string& text) const {
        std::ofstream(dir / rel, std::ios::binary | std::ios::trunc) << text;
    }
    json read(const std::string& rel) const {
        std::ifstream in(dir / rel);
        return json::parse(in);
    }
};

}  // namespace

TEST_CASE("bundled catalog") {
    const Catalog& c = fixture::catalog();
    REQUIRE(c.find_hardware("IBM"));
    REQUIRE(c.find_hardware("IonQ"));
    REQUIRE(c.find_hardware("QuEra"));
    CHECK(c.find_hardware("IBM")->hws == 3.78);
    CHECK(c.find_hardware("IonQ")->hws == 8.48);
    CHECK(c.find_hardware("QuEra")->hws == 5.1);
    CHECK(c.find_hardware("IBM")->connectivity_penalty.source() == "sqrt(q)");
    CHECK(c.find_hardware("IonQ")->connectivity_penalty.source() == "1");
    CHECK(c.find_hardware("QuEra")->connectivity_penalty.source() == "1");
    CHECK(c.find_hardware("IBM")->plqr == 264);
    CHECK(c.find_hardware("IonQ")->plqr == 32);
    CHECK(c.find_hardware("QuEra")->plqr == 100);
    for (const auto& h : c.hardware) {
        CAPTURE(h.name);
        CHECK(h.qir_pct == -10);
        CHECK(h.rir_pct == -23);
        CHECK(h.cir_pct == -10);
        CHECK(h.processors_log10 == 8);
        REQUIRE(h.slowdown);
        CHECK(std::abs(compose_slowdown(*h.slowdown) - h.hws) <= 0.01);
        CHECK(c.find_roadmap(h.roadmap_ref));
    }

    const ProblemPreset* search = c.find_problem("Search");
    REQUIRE(search);
    CHECK(search->qps == QpsKind::exponential);
    CHECK(search->quantum_work.to_string() == "sqrt(n) * q");
    CHECK(search->quantum_work_is_default);
    const ProblemPreset* factoring = c.find_problem("Factoring");
    REQUIRE(factoring);
    CHECK(factoring->qps == QpsKind::linear);
    CHECK(factoring->classical_runtime.source() == "e^((64/9 * n)^(1/3) * (ln(n))^(2/3)) / procs");
    CHECK(factoring->quantum_runtime.source() == "n^2 * ln(n)");
    const ProblemPreset* tsp = c.find_problem("TSP");
    REQUIRE(tsp);
    CHECK(tsp->notes.find("Illustrative") != std::string::npos);

    for (const char* label : {"IBM", "IonQ", "QuEra", "Google", "Pasqal"}) CHECK(c.find_roadmap(label));
}

TEST_CASE("every preset pair validates") {
    const Catalog& c = fixture::catalog();
    for (const auto& p : c.problems)
        for (const auto& h : c.hardware) {
            const ModelParams m = build_params(p, h, c);
            CHECK(validate(m).empty());
        }
}

TEST_CASE("build_params merges presets and overrides") {
    const Catalog& c = fixture::catalog();
    const ModelParams ibm = build_params(*c.find_problem("Factoring"), *c.find_hardware("IBM"), c);
    CHECK(ibm.connectivity_penalty.source() == "sqrt(q)");
    CHECK(ibm.plqr == 264);
    CHECK(ibm.t0 == current_calendar_year());
    CHECK(ibm.cost_factor_log10 == doctest::Approx(3.78 + 8.0));
    CHECK(ibm.roadmap.label() == "IBM");

    const ModelParams ionq =
        build_params(*c.find_problem("Search"), *c.find_hardware("IonQ"), c, {{"hws", 5.0}, {"t0", 2030}});
    CHECK(ionq.hws == 5.0);
    CHECK(ionq.t0 == 2030);

    try {
        build_params(*c.find_problem("Factoring"), *c.find_hardware("QuEra"), c, {{"plqr", 2}});
        FAIL("expected InvalidOverride");
    } catch (const InvalidOverride& e) {
        CHECK(e.key() == "plqr");
    }
    CHECK_THROWS_AS(build_params(*c.find_problem("Search"), *c.find_hardware("IBM"), c, {{"plqr_typo", 5}}),
                    InvalidOverride);
    CHECK_THROWS_AS(build_params(*c.find_problem("Search"), *c.find_hardware("IBM"), c, {{"roadmap", "Nope"}}),
                    InvalidOverride);
    CHECK_THROWS_AS(build_params(*c.find_problem("Search"), *c.find_hardware("IBM"), c,
                                 {{"classical_runtime", "n * q"}}),
                    InvalidOverride);

    const ModelParams other =
        build_params(*c.find_problem("Search"), *c.find_hardware("IBM"), c,
                     json::parse(R"({"roadmap": "Google", "slowdown": {"gate_time_ns": 250},
                                     "cost_factor_log10": 4, "qps": "linear"})"));
    CHECK(other.roadmap.label() == "Google");
    CHECK(std::abs(other.hws - 5.1) <= 0.01);
    CHECK(other.cost_factor_log10 == 4);
    CHECK(other.qps == QpsKind::linear);

    const ModelParams inline_rm = build_params(
        *c.find_problem("Search"), *c.find_hardware("IBM"), c,
        json::parse(R"({"roadmap": {"label": "mine", "qubit_kind": "logical", "extrapolation": "linear",
                                    "points": [{"year": 2025, "qubits": 10}, {"year": 2030, "qubits": 60}]}})"));
    CHECK(inline_rm.roadmap.label() == "mine");
    CHECK(inline_rm.roadmap.qubit_kind() == QubitKind::logical);
}

TEST_CASE("resolve_params reports every problem") {
    const Catalog& c = fixture::catalog();
    std::vector<Diagnostic> diags;
    auto p = resolve_params(*c.find_problem("Search"), *c.find_hardware("IBM"), c,
                            {{"hws", "fast"}, {"qps", "cubic"}, {"bogus", 1}}, diags);
    CHECK(!p);
    CHECK(diags.size() == 3);
}

TEST_CASE("inline presets") {
    std::vector<Diagnostic> diags;
    auto prob = problem_from_json(json::parse(R"({"classical_runtime": "n^3 / procs", "quantum_runtime": "n",
                                                   "quantum_work": "n * q^2", "qps": "logarithmic"})"),
                                  "problem", diags);
    REQUIRE(prob);
    CHECK(diags.empty());
    CHECK(!prob->quantum_work_is_default);
    CHECK(prob->classical_work.variables() == VariableSet{Variable::n});

    auto bad = problem_from_json(json::parse(R"({"classical_runtime": "n * q", "quantum_runtime": "n", "qps": "linear"})"),
                                 "problem", diags);
    CHECK(!bad);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].field == "problem.classical_runtime");

    diags.clear();
    auto hw = hardware_from_json(json::parse(R"({"slowdown": {"gate_time_ns": 12}, "qir_pct": -10,
                                               "connectivity_penalty": "1", "plqr": 50, "rir_pct": 0,
                                               "cir_pct": 0, "processors_log10": 2})"),
                                 "hardware", diags);
    REQUIRE(hw);
    CHECK(std::abs(hw->hws - 3.78) <= 0.01);
    CHECK(hw->name == "custom");
}

TEST_CASE("damaged data files") {
    {
        ScratchData d("qea_presets_bad_json");
        d.write("presets/hardware.json", "[{\"name\": ");
        CHECK_THROWS_AS(load_presets(d.dir), PresetCorrupt);
    }
    {
        ScratchData d("qea_presets_bad_ref");
        json hw = d.read("presets/hardware.json");
        hw[0]["roadmap_ref"] = "Nowhere";
        d.write("presets/hardware.json", hw.dump());
        CHECK_THROWS_AS(load_presets(d.dir), PresetCorrupt);
    }
    {
        ScratchData d("qea_presets_bad_hws");
        json hw = d.read("presets/hardware.json");
        hw[0]["hws"] = 3.9;
        d.write("presets/hardware.json", hw.dump());
        CHECK_THROWS_AS(load_presets(d.dir), PresetCorrupt);
    }
    {
        ScratchData d("qea_presets_bad_roadmap");
        d.write("roadmaps/ibm.json", R"({"label": "IBM", "points": [{"year": 2030, "qubits": 5}, {"year": 2020, "qubits": 9}]})");
        CHECK_THROWS_AS(load_presets(d.dir), PresetCorrupt);
    }
    {
        ScratchData d("qea_presets_bad_expr");
        json pr = d.read("presets/problems.json");
        pr[1]["quantum_runtime"] = "sqrt(n";
        d.write("presets/problems.json", pr.dump());
        CHECK_THROWS_AS(load_presets(d.dir), PresetCorrupt);
    }
    CHECK_THROWS_AS(load_presets("/nonexistent/qea"), PresetCorrupt);
}

TEST_CASE("catalog serialisation is stable") {
    const Catalog& c = fixture::catalog();
    const std::string a = to_json(c).dump();
    const std::string b = to_json(load_presets(QEA_DATA_DIR)).dump();
    CHECK(a == b);
    const json j = json::parse(a);
    CHECK(j["hardware"][0]["name"] == "IBM");
    CHECK(j["problems"][0]["name"] == "Factoring");
}
