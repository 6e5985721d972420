// Batch front end: qea run|validate|presets|sweep.
#include "qea/config.hpp"
#include "qea/error.hpp"
#include "qea/presets.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfigError = 2, kNoConvergence = 3, kIoError = 4 };

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path default_data_dir() {
    if (const char* env = std::getenv("QEA_DATA_DIR")) return env;
    return QEA_DATA_DIR;
}

json read_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());  // json::parse_error is a config error
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) throw IoFailure("cannot write " + path.string());
}

void print_diagnostics(const std::vector<qea::Diagnostic>& diags) {
    for (const auto& d : diags) std::cerr << (d.field.empty() ? "config" : d.field) << ": " << d.message << "\n";
}

std::optional<qea::RunPlan> load_plan(const fs::path& config, const qea::Catalog& catalog) {
    std::vector<qea::Diagnostic> diags;
    auto plan = qea::plan_from_json(read_config(config), catalog, diags);
    if (!plan) print_diagnostics(diags);
    return plan;
}

fs::path output_dir(const qea::RunPlan& plan, const std::string& out_flag) {
    const fs::path dir = out_flag.empty() ? fs::path(plan.output_path) : fs::path(out_flag);
    if (dir.empty()) return dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
    return dir;
}

std::string sweep_text(const qea::RunPlan& plan, const qea::SweepReport& report) {
    return plan.format == qea::OutputFormat::csv ? qea::sweep_csv(report) : qea::sweep_json(report).dump(2) + "\n";
}

int cmd_run(const fs::path& config, const std::string& out_flag, const qea::Catalog& catalog) {
    auto plan = load_plan(config, catalog);
    if (!plan) return kConfigError;
    const qea::Evaluation ev = qea::evaluate(*plan);
    const std::string summary = qea::summary_json(*plan, ev).dump(2) + "\n";
    const fs::path dir = output_dir(*plan, out_flag);
    if (dir.empty()) {
        std::cout << summary;
        return kOk;
    }
    write_file(dir / "summary.json", summary);
    if (plan->format == qea::OutputFormat::csv)
        write_file(dir / "curves.csv", qea::curves_csv(ev.curves));
    else
        write_file(dir / "curves.json", qea::curves_json(ev.curves).dump(2) + "\n");
    if (plan->sweep) {
        const auto report = qea::run_sweep(qea::sweep_spec(*plan));
        write_file(dir / (plan->format == qea::OutputFormat::csv ? "sweep.csv" : "sweep.json"),
                   sweep_text(*plan, report));
    }
    return kOk;
}

int cmd_sweep(const fs::path& config, const std::string& out_flag, const qea::Catalog& catalog) {
    auto plan = load_plan(config, catalog);
    if (!plan) return kConfigError;
    if (!plan->sweep) {
        std::cerr << "sweep: config has no sweep section\n";
        return kConfigError;
    }
    const std::string text = sweep_text(*plan, qea::run_sweep(qea::sweep_spec(*plan)));
    const fs::path dir = output_dir(*plan, out_flag);
    if (dir.empty()) std::cout << text;
    else write_file(dir / (plan->format == qea::OutputFormat::csv ? "sweep.csv" : "sweep.json"), text);
    return kOk;
}

int cmd_validate(const fs::path& config, const qea::Catalog& catalog) {
    const auto diags = qea::validate_config(read_config(config), catalog);
    std::cout << qea::diagnostics_json(diags).dump(2) << "\n";
    return diags.empty() ? kOk : kConfigError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum economic advantage calculator"};
    app.require_subcommand(1);
    std::string data_dir = default_data_dir().string();
    app.add_option("--data", data_dir, "preset data directory")->capture_default_str();

    std::string config, out;
    auto* run = app.add_subcommand("run", "solve a config and write summary, curves and sweep");
    run->add_option("config", config, "config file")->required();
    run->add_option("--out", out, "output directory (overrides output.path)");

    auto* validate = app.add_subcommand("validate", "check a config without solving");
    validate->add_option("config", config, "config file")->required();

    app.add_subcommand("presets", "print the preset catalog");

    auto* sweep = app.add_subcommand("sweep", "run only the sensitivity sweep of a config");
    sweep->add_option("config", config, "config file")->required();
    sweep->add_option("--out", out, "output directory (overrides output.path)");

    CLI11_PARSE(app, argc, argv);

    try {
        const qea::Catalog catalog = qea::load_presets(data_dir);
        if (app.got_subcommand("presets")) {
            std::cout << qea::to_json(catalog).dump(2) << "\n";
            return kOk;
        }
        if (app.got_subcommand(validate)) return cmd_validate(config, catalog);
        if (app.got_subcommand(run)) return cmd_run(config, out, catalog);
        return cmd_sweep(config, out, catalog);
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const qea::PresetCorrupt& e) {
        std::cerr << "error: preset data: " << e.what() << "\n";
        return kIoError;
    } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kConfigError;
    } catch (const qea::NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const qea::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}
