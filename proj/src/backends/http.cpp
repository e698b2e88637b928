#include "pillars/backends/http.hpp"

#include <cmath>
#include <filesystem>

#include <fmt/format.h>
#include <httplib.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/hash.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::backends {

namespace {

std::string join_url(std::string base, std::string_view route) {
    while (base.ends_with("/")) base.pop_back();
    return base + std::string(route);
}

template <class T>
T field(const Json& j, const char* name, const std::string& endpoint) {
    try {
        return j.at(name).get<T>();
    } catch (const std::exception&) {
        throw BackendError(fmt::format("{}: response field '{}' missing or mistyped", endpoint, name), false);
    }
}

}  // namespace

std::string_view to_string(EmbedKind k) { return k == EmbedKind::text ? "text" : "image"; }

Json post_json(const std::string& endpoint, const Json& body, std::chrono::seconds timeout) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) throw BackendError("malformed endpoint '" + endpoint + "'", false);
    const auto path_start = endpoint.find('/', scheme_end + 3);
    const auto path = path_start == std::string::npos ? std::string("/") : endpoint.substr(path_start);
    httplib::Client cli(endpoint.substr(0, path_start));
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    auto res = cli.Post(path, body.dump(), "application/json");
    if (!res) throw BackendError(fmt::format("{}: {}", endpoint, httplib::to_string(res.error())), true);
    if (res->status == 429 || res->status >= 500)
        throw BackendError(fmt::format("{}: HTTP {}", endpoint, res->status), true);
    if (res->status != 200) throw BackendError(fmt::format("{}: HTTP {} {}", endpoint, res->status, res->body), false);
    auto j = Json::parse(res->body, nullptr, false);
    if (j.is_discarded()) throw BackendError(endpoint + ": response is not JSON", false);
    return j;
}

std::string encode_image(std::string_view image_ref) {
    if (strings::starts_with_ci(image_ref, "http://") || strings::starts_with_ci(image_ref, "https://"))
        return std::string(image_ref);
    auto bytes = read_file(std::filesystem::path(std::string(image_ref)));
    if (!bytes) throw BackendError("cannot read image '" + std::string(image_ref) + "'", false);
    return base64_encode(*bytes);
}

HttpChatBackend::HttpChatBackend(std::string base_url, std::chrono::seconds timeout)
    : url_(join_url(std::move(base_url), "/v1/chat")), timeout_(timeout) {}

ChatResponse HttpChatBackend::chat(const ChatRequest& req) {
    Json body;
    body["messages"] = Json::array();
    for (const auto& m : req.messages) {
        Json jm{{"role", m.role}, {"text", m.text}};
        if (!m.images.empty()) {
            jm["images"] = Json::array();
            for (const auto& img : m.images) jm["images"].push_back(encode_image(img));
        }
        body["messages"].push_back(std::move(jm));
    }
    body["temperature"] = req.temperature;
    body["max_tokens"] = req.max_tokens;
    if (req.seed) body["seed"] = *req.seed;
    auto j = post_json(url_, body, timeout_);
    return {field<std::string>(j, "text", url_), j.contains("refused") ? field<bool>(j, "refused", url_) : false};
}

HttpEmbedBackend::HttpEmbedBackend(std::string base_url, std::chrono::seconds timeout)
    : url_(join_url(std::move(base_url), "/v1/embed")), timeout_(timeout) {}

std::vector<double> HttpEmbedBackend::embed(EmbedKind kind, std::string_view content) {
    Json body{{"kind", to_string(kind)},
              {"content", kind == EmbedKind::image ? encode_image(content) : std::string(content)}};
    auto j = post_json(url_, body, timeout_);
    auto v = field<std::vector<double>>(j, "vector", url_);
    if (j.contains("dim") && field<std::size_t>(j, "dim", url_) != v.size())
        throw BackendError(url_ + ": dim does not match vector length", false);
    for (double x : v)
        if (!std::isfinite(x)) throw BackendError(url_ + ": non-finite embedding", false);
    return v;
}

HttpClassifierBackend::HttpClassifierBackend(std::string base_url, std::chrono::seconds timeout)
    : url_(join_url(std::move(base_url), "/v1/classify")), timeout_(timeout) {}

Classification HttpClassifierBackend::classify(std::string_view image_ref) {
    auto j = post_json(url_, Json{{"image", encode_image(image_ref)}}, timeout_);
    return {field<std::string>(j, "label", url_), field<double>(j, "score", url_)};
}

HttpScoringBackend::HttpScoringBackend(std::string base_url, std::chrono::seconds timeout)
    : url_(join_url(std::move(base_url), "/v1/score")), timeout_(timeout) {}

std::vector<double> HttpScoringBackend::score(const std::vector<std::string>& candidates,
                                              const std::vector<std::string>& references) {
    auto j = post_json(url_, Json{{"candidates", candidates}, {"references", references}}, timeout_);
    return field<std::vector<double>>(j, "f1", url_);
}

HttpArchiveBackend::HttpArchiveBackend(std::string base_url, std::chrono::seconds timeout)
    : url_(join_url(std::move(base_url), "/v1/archive")), timeout_(timeout) {}

std::vector<std::string> HttpArchiveBackend::urls(std::string_view domain, int from_year, int to_year) {
    auto j = post_json(url_, Json{{"domain", domain}, {"from_year", from_year}, {"to_year", to_year}}, timeout_);
    return field<std::vector<std::string>>(j, "urls", url_);
}

}  // namespace pillars::backends
