#pragma once

#include "qea/presets.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace qea {

inline constexpr int kDefaultPort = 8080;
inline constexpr const char* kDefaultCorsOrigin = "http://localhost:5173";
// Per-curve sample cap for /evaluate; wider windows get a coarser step.
inline constexpr std::size_t kMaxCurveSamples = 2000;

struct HttpResult {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

// Request handlers as plain functions of the request body. The catalog is
// loaded once and never written afterwards.
class Service {
public:
    explicit Service(const std::filesystem::path& data_dir);

    HttpResult presets() const;
    HttpResult evaluate(const std::string& body) const;
    HttpResult sweep(const std::string& body) const;

    // Validates the sweep request. On success returns nullopt and later calls
    // to stream_sweep emit one JSON line per row, then a closing summary line.
    std::optional<HttpResult> prepare_sweep(const std::string& body) const;
    void stream_sweep(const std::string& body, const std::function<bool(const std::string&)>& write) const;

    bool catalog_ok() const noexcept { return catalog_.has_value(); }

private:
    std::optional<Catalog> catalog_;
    std::string load_error_;
};

// Routes: GET /presets, POST /evaluate, POST /sweep (?stream=1 for NDJSON).
void mount(httplib::Server& server, const Service& service, const std::string& cors_origin);

}  // namespace qea
