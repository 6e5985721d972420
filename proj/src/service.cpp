#include "qea/service.hpp"

#include "qea/config.hpp"
#include "qea/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cmath>

namespace qea {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

HttpResult json_result(int status, const ordered_json& j) { return {status, j.dump() + "\n"}; }

HttpResult bad_request(const std::vector<Diagnostic>& diags) {
    ordered_json j;
    j["error"] = "invalid request";
    j["diagnostics"] = diagnostics_json(diags);
    return json_result(400, j);
}

HttpResult no_convergence(const NoConvergence& e) {
    ordered_json j;
    j["error"] = e.what();
    j["scanned_range"] = {e.range_lo(), e.range_hi()};
    return json_result(422, j);
}

struct Parsed {
    std::optional<RunPlan> plan;
    std::optional<HttpResult> failure;
};

Parsed parse_plan(const std::string& body, const std::optional<Catalog>& catalog, const std::string& load_error) {
    if (!catalog) {
        ordered_json j;
        j["error"] = "preset data is corrupt";
        j["diagnostics"] = diagnostics_json({{"presets", load_error}});
        return {std::nullopt, json_result(500, j)};
    }
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        return {std::nullopt, bad_request({{"", std::string("body is not valid JSON: ") + e.what()}})};
    }
    std::vector<Diagnostic> diags;
    auto plan = plan_from_json(doc, *catalog, diags);
    if (!plan) return {std::nullopt, bad_request(diags)};
    return {std::move(plan), std::nullopt};
}

}  // namespace

Service::Service(const std::filesystem::path& data_dir) {
    try {
        catalog_ = load_presets(data_dir);
    } catch (const PresetCorrupt& e) {
        load_error_ = e.what();
    }
}

HttpResult Service::presets() const {
    if (!catalog_) {
        ordered_json j;
        j["error"] = "preset data is corrupt";
        j["diagnostics"] = diagnostics_json({{"presets", load_error_}});
        return json_result(500, j);
    }
    return json_result(200, to_json(*catalog_));
}

HttpResult Service::evaluate(const std::string& body) const {
    Parsed parsed = parse_plan(body, catalog_, load_error_);
    if (parsed.failure) return *parsed.failure;
    RunPlan& plan = *parsed.plan;

    const double span = plan.curves.end - plan.curves.start;
    if (std::floor(span / plan.curves.step) + 1 > static_cast<double>(kMaxCurveSamples))
        plan.curves.step = span / static_cast<double>(kMaxCurveSamples - 1);

    try {
        const Evaluation ev = qea::evaluate(plan);
        ordered_json j = summary_json(plan, ev);
        j["curves"] = curves_json(ev.curves);
        j["curves"]["step"] = plan.curves.step;
        return json_result(200, j);
    } catch (const NoConvergence& e) {
        return no_convergence(e);
    }
}

HttpResult Service::sweep(const std::string& body) const {
    if (auto failure = prepare_sweep(body)) return *failure;
    Parsed parsed = parse_plan(body, catalog_, load_error_);
    try {
        return json_result(200, sweep_json(run_sweep(sweep_spec(*parsed.plan))));
    } catch (const NoConvergence& e) {
        return no_convergence(e);
    }
}

std::optional<HttpResult> Service::prepare_sweep(const std::string& body) const {
    Parsed parsed = parse_plan(body, catalog_, load_error_);
    if (parsed.failure) return parsed.failure;
    if (!parsed.plan->sweep) return bad_request({{"sweep", "missing"}});
    return std::nullopt;
}

void Service::stream_sweep(const std::string& body, const std::function<bool(const std::string&)>& write) const {
    Parsed parsed = parse_plan(body, catalog_, load_error_);
    bool open = true;
    try {
        const SweepReport report = run_sweep(sweep_spec(*parsed.plan), [&](const SweepRow& row) {
            if (open) open = write(sweep_row_json(row).dump() + "\n");
        });
        ordered_json tail;
        try {
            tail["spread"] = spread(report);
        } catch (const UndefinedSpread&) {
            tail["spread"] = nullptr;
        }
        if (open) write(tail.dump() + "\n");
    } catch (const NoConvergence& e) {
        ordered_json tail;
        tail["error"] = e.what();
        if (open) write(tail.dump() + "\n");
    }
}

void mount(httplib::Server& server, const Service& service, const std::string& cors_origin) {
    auto reply = [cors_origin](httplib::Response& res, const HttpResult& r) {
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    server.set_post_routing_handler([cors_origin](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", cors_origin);
        res.set_header("Vary", "Origin");
    });
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    server.Get("/presets", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.presets());
    });
    server.Post("/evaluate", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.evaluate(req.body));
    });
    server.Post("/sweep", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        if (req.get_param_value("stream") != "1") {
            reply(res, service.sweep(req.body));
            return;
        }
        if (auto failure = service.prepare_sweep(req.body)) {
            reply(res, *failure);
            return;
        }
        res.set_chunked_content_provider(
            "application/x-ndjson", [&service, body = req.body](std::size_t, httplib::DataSink& sink) {
                service.stream_sweep(body, [&sink](const std::string& line) {
                    return sink.write(line.data(), line.size());
                });
                sink.done();
                return true;
            });
    });
}

}  // namespace qea
