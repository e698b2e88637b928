#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <thread>

#include <httplib.h>

#include "pillars/backends/mock.hpp"
#include "pillars/evidence/ris.hpp"

namespace pillars::backends {

/// Every fixture-driven backend, loaded from one directory:
/// chat.json, embeddings.json, labels.json, archive.json, ris.json. Missing
/// files give empty behaviour (default answers, hashed vectors, no labels).
struct MockSuite {
    ImageKeys keys;
    std::shared_ptr<MockChat> chat;
    std::shared_ptr<MockEmbed> embed;
    std::shared_ptr<MockClassifier> classifier;
    std::shared_ptr<MockScorer> scorer;
    std::shared_ptr<MockArchive> archive;
    std::shared_ptr<evidence::FixtureRisProvider> ris;
};

MockSuite load_mock_suite(const std::filesystem::path& mock_dir, const std::filesystem::path& images_dir);

/// Serves the model-adapter wire contract from `suite`:
/// POST /v1/chat, /v1/embed, /v1/classify, /v1/score, /v1/ris, /v1/archive
/// and GET /healthz. Malformed requests get 400 with {"error": ...}.
void mount_mock_routes(httplib::Server& server, std::shared_ptr<const MockSuite> suite);

/// The mock routes served from a background thread. Port 0 picks a free port.
class MockServer {
public:
    MockServer(std::shared_ptr<const MockSuite> suite, const std::string& host = "127.0.0.1", int port = 0);
    ~MockServer();
    MockServer(const MockServer&) = delete;
    MockServer& operator=(const MockServer&) = delete;

    int port() const { return port_; }
    std::string base_url() const;
    void stop();

private:
    httplib::Server server_;
    std::string host_;
    int port_ = 0;
    std::thread thread_;
};

}  // namespace pillars::backends
