// Stand-in for the model adapter: serves fixture answers over its HTTP API.
#include <csignal>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "pillars/backends/mock_server.hpp"

namespace {
httplib::Server* g_server = nullptr;
void on_signal(int) {
    if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pillars-mock-server: fixture-backed model adapter"};
    std::string mock_dir = std::string(PILLARS_FIXTURE_DIR) + "/mock";
    std::string images_dir = std::string(PILLARS_FIXTURE_DIR) + "/images";
    std::string host = "127.0.0.1";
    int port = 8765;
    app.add_option("--mock-dir", mock_dir, "Directory with chat/embeddings/labels/archive/ris JSON");
    app.add_option("--images", images_dir, "Directory of images the fixtures refer to");
    app.add_option("--host", host);
    app.add_option("--port", port, "0 picks a free port");
    CLI11_PARSE(app, argc, argv);

    try {
        auto suite = std::make_shared<const pillars::backends::MockSuite>(
            pillars::backends::load_mock_suite(mock_dir, images_dir));
        httplib::Server server;
        pillars::backends::mount_mock_routes(server, suite);
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        if (port == 0) port = server.bind_to_any_port(host);
        else if (!server.bind_to_port(host, port)) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
        std::cout << "listening on http://" << host << ":" << port << std::endl;
        server.listen_after_bind();
    } catch (const std::exception& e) {
        std::cerr << "pillars-mock-server: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
