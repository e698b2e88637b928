#include "pillars/cli/services.hpp"

namespace pillars::cli {

pipeline::Backends Services::pipeline() const {
    return {ris.get(), fetcher.get(), chat.get(), embed.get(), classifier.get()};
}

Services make_services(const AppConfig& cfg) {
    Services s;
    if (cfg.mock) {
        s.suite = std::make_shared<backends::MockSuite>(backends::load_mock_suite(cfg.mock_dir, cfg.mock_images));
        s.ris = s.suite->ris;
        s.chat = s.suite->chat;
        s.embed = s.suite->embed;
        s.classifier = s.suite->classifier;
        s.scorer = s.suite->scorer;
        s.archive = s.suite->archive;
        if (!cfg.mock_web.empty()) s.fetcher = std::make_shared<evidence::FixtureFetcher>(cfg.mock_web);
        return s;
    }
    auto base = [&](const char* service) { return cfg.endpoint(service); };
    if (auto u = base("chat"); !u.empty()) s.chat = std::make_shared<backends::HttpChatBackend>(u);
    if (auto u = base("embed"); !u.empty()) s.embed = std::make_shared<backends::HttpEmbedBackend>(u);
    if (auto u = base("classify"); !u.empty()) s.classifier = std::make_shared<backends::HttpClassifierBackend>(u);
    if (auto u = base("score"); !u.empty()) s.scorer = std::make_shared<backends::HttpScoringBackend>(u);
    if (auto u = base("archive"); !u.empty()) s.archive = std::make_shared<backends::HttpArchiveBackend>(u);
    if (auto u = base("ris"); !u.empty()) {
        while (!u.empty() && u.back() == '/') u.pop_back();
        s.ris = std::make_shared<evidence::HttpRisProvider>(u + "/v1/ris");
    }
    s.fetcher = std::make_shared<evidence::PoliteFetcher>(std::make_shared<evidence::HttpFetcher>(),
                                                          std::chrono::milliseconds(cfg.fetch_delay_ms));
    return s;
}

}  // namespace pillars::cli
