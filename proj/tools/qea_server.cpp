// HTTP front end. QEA_PORT (default 8080), QEA_HOST (default 127.0.0.1),
// QEA_CORS_ORIGIN and QEA_DATA_DIR are read from the environment.
#include "qea/service.hpp"

#include <httplib.h>

#include <cstdlib>
#include <iostream>
#include <string>

int main() {
    auto env = [](const char* name, std::string fallback) {
        const char* v = std::getenv(name);
        return v && *v ? std::string(v) : fallback;
    };
    const std::string data_dir = env("QEA_DATA_DIR", QEA_DATA_DIR);
    const std::string host = env("QEA_HOST", "127.0.0.1");
    const std::string cors = env("QEA_CORS_ORIGIN", qea::kDefaultCorsOrigin);
    int port = qea::kDefaultPort;
    try {
        port = std::stoi(env("QEA_PORT", std::to_string(qea::kDefaultPort)));
    } catch (const std::exception&) {
        std::cerr << "QEA_PORT must be an integer\n";
        return 2;
    }

    const qea::Service service(data_dir);
    if (!service.catalog_ok()) std::cerr << "warning: preset data failed to load; every endpoint will answer 500\n";

    httplib::Server server;
    qea::mount(server, service, cors);
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        return 4;
    }
    return 0;
}
