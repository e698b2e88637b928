#pragma once

#include <memory>

#include "pillars/backends/http.hpp"
#include "pillars/backends/mock_server.hpp"
#include "pillars/cli/app_config.hpp"
#include "pillars/pipeline/runner.hpp"

namespace pillars::cli {

/// Owns the backends a command talks to: in-process fixture mocks when
/// cfg.mock is set, otherwise HTTP clients of the configured endpoints and a
/// polite web fetcher. Services without an endpoint stay null.
struct Services {
    std::shared_ptr<backends::MockSuite> suite;
    std::shared_ptr<evidence::Fetcher> fetcher;
    std::shared_ptr<evidence::RisProvider> ris;
    std::shared_ptr<backends::ChatBackend> chat;
    std::shared_ptr<backends::EmbedBackend> embed;
    std::shared_ptr<backends::ClassifierBackend> classifier;
    std::shared_ptr<backends::ScoringBackend> scorer;
    std::shared_ptr<backends::ArchiveBackend> archive;

    pipeline::Backends pipeline() const;
};

Services make_services(const AppConfig& cfg);

}  // namespace pillars::cli
