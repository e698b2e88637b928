#include "pillars/backends/mock_server.hpp"

#include "pillars/core/hash.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::backends {

namespace {

std::string image_key(const MockSuite& s, const std::string& wire) {
    if (strings::starts_with_ci(wire, "http://") || strings::starts_with_ci(wire, "https://"))
        return ImageKeys::key_of_ref(wire);
    if (auto bytes = base64_decode(wire)) return s.keys.key_of_bytes(*bytes);
    return ImageKeys::key_of_ref(wire);
}

void reply(httplib::Response& res, const Json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

template <class F>
httplib::Server::Handler json_route(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
        Json in = Json::parse(req.body, nullptr, false);
        if (in.is_discarded() || !in.is_object()) return reply(res, Json{{"error", "body is not a JSON object"}}, 400);
        try {
            reply(res, f(in));
        } catch (const BackendError& e) {
            reply(res, Json{{"error", e.what()}}, e.retryable() ? 503 : 404);
        } catch (const std::exception& e) {
            reply(res, Json{{"error", e.what()}}, 400);
        }
    };
}

}  // namespace

MockSuite load_mock_suite(const std::filesystem::path& mock_dir, const std::filesystem::path& images_dir) {
    MockSuite s;
    s.keys = ImageKeys(images_dir);
    s.chat = std::make_shared<MockChat>(load_mock_file(mock_dir, "chat.json", Json::object()));
    s.embed = std::make_shared<MockEmbed>(load_mock_file(mock_dir, "embeddings.json", Json::object()));
    s.classifier = std::make_shared<MockClassifier>(load_mock_file(mock_dir, "labels.json", Json::object()));
    s.scorer = std::make_shared<MockScorer>();
    s.archive = std::make_shared<MockArchive>(load_mock_file(mock_dir, "archive.json", Json::object()));
    if (std::filesystem::exists(mock_dir / "ris.json"))
        s.ris = std::make_shared<evidence::FixtureRisProvider>(mock_dir / "ris.json");
    else
        s.ris = std::make_shared<evidence::FixtureRisProvider>(std::map<std::string, std::vector<evidence::RisResult>>{});
    return s;
}

void mount_mock_routes(httplib::Server& server, std::shared_ptr<const MockSuite> suite) {
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { reply(res, Json{{"status", "ok"}}); });

    server.Post("/v1/chat", json_route([suite](const Json& in) {
        std::vector<std::string> texts, keys;
        for (const auto& m : in.at("messages")) {
            texts.push_back(m.at("text").get<std::string>());
            for (const auto& img : m.value("images", Json::array())) keys.push_back(image_key(*suite, img.get<std::string>()));
        }
        auto r = suite->chat->answer(strings::join(texts, "\n"), keys);
        return Json{{"text", r.text}, {"refused", r.refused}};
    }));

    server.Post("/v1/embed", json_route([suite](const Json& in) {
        const auto kind = in.at("kind").get<std::string>();
        const auto content = in.at("content").get<std::string>();
        std::vector<double> v;
        if (kind == "image") v = suite->embed->embed_image_key(image_key(*suite, content));
        else if (kind == "text") v = suite->embed->embed_text(content);
        else throw std::invalid_argument("kind must be text or image");
        return Json{{"vector", v}, {"dim", v.size()}};
    }));

    server.Post("/v1/classify", json_route([suite](const Json& in) {
        auto c = suite->classifier->classify_key(image_key(*suite, in.at("image").get<std::string>()));
        return Json{{"label", c.label}, {"score", c.score}};
    }));

    server.Post("/v1/score", json_route([suite](const Json& in) {
        auto f1 = suite->scorer->score(in.at("candidates").get<std::vector<std::string>>(),
                                       in.at("references").get<std::vector<std::string>>());
        return Json{{"f1", f1}};
    }));

    server.Post("/v1/ris", json_route([suite](const Json& in) {
        auto key = image_key(*suite, in.at("image").get<std::string>());
        Json out{{"results", Json::array()}};
        for (const auto& r : suite->ris->search(key, in.value("max_results", evidence::kDefaultMaxUrls)))
            out["results"].push_back(evidence::to_json(r));
        return out;
    }));

    server.Post("/v1/archive", json_route([suite](const Json& in) {
        auto urls = suite->archive->urls(in.at("domain").get<std::string>(), in.value("from_year", 2019),
                                         in.value("to_year", 2023));
        return Json{{"urls", urls}};
    }));
}

MockServer::MockServer(std::shared_ptr<const MockSuite> suite, const std::string& host, int port) : host_(host) {
    mount_mock_routes(server_, std::move(suite));
    port_ = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (port_ <= 0) throw std::runtime_error("mock server: cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
}

MockServer::~MockServer() { stop(); }

std::string MockServer::base_url() const { return "http://" + host_ + ":" + std::to_string(port_); }

void MockServer::stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace pillars::backends
