#include "pillars/evidence/ris.hpp"

#include <thread>

#include "pillars/backends/http.hpp"

#include "pillars/core/atomic_file.hpp"

namespace pillars::evidence {

std::string_view to_string(MatchKind k) { return k == MatchKind::full ? "full" : "partial"; }

Json to_json(const RisResult& r) {
    return Json{{"page_url", r.page_url}, {"match_kind", to_string(r.match_kind)}, {"matched_image_urls", r.matched_image_urls}};
}

RisResult ris_result_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("RIS result is not an object");
    RisResult r;
    auto url = j.find("page_url");
    if (url == j.end() || !url->is_string()) throw std::invalid_argument("page_url: missing or not a string");
    r.page_url = url->get<std::string>();
    if (!is_well_formed_url(r.page_url)) throw std::invalid_argument("page_url: malformed URL '" + r.page_url + "'");
    const auto kind = j.value("match_kind", std::string("partial"));
    if (kind == "full")
        r.match_kind = MatchKind::full;
    else if (kind == "partial")
        r.match_kind = MatchKind::partial;
    else
        throw std::invalid_argument("match_kind: unknown value '" + kind + "'");
    if (auto m = j.find("matched_image_urls"); m != j.end() && m->is_array())
        for (const auto& u : *m)
            if (u.is_string()) r.matched_image_urls.push_back(u.get<std::string>());
    return r;
}

std::vector<RisResult> ris_response_from_json(const Json& j) {
    std::vector<RisResult> out;
    auto it = j.find("results");
    if (it == j.end() || !it->is_array()) throw std::invalid_argument("results: missing or not an array");
    for (const auto& r : *it) out.push_back(ris_result_from_json(r));
    return out;
}

FixtureRisProvider::FixtureRisProvider(const std::filesystem::path& map_file) {
    auto text = read_file(map_file);
    if (!text) throw std::runtime_error("RIS fixture map missing: " + map_file.string());
    auto j = Json::parse(*text);
    for (const auto& [key, v] : j.items()) map_[key] = ris_response_from_json(v);
}

FixtureRisProvider::FixtureRisProvider(std::map<std::string, std::vector<RisResult>> map) : map_(std::move(map)) {}

std::vector<RisResult> FixtureRisProvider::search(std::string_view image_ref, int max_results) {
    const std::filesystem::path p{std::string(image_ref)};
    for (const auto& key : {std::string(image_ref), p.filename().string(), p.stem().string()}) {
        auto it = map_.find(key);
        if (it == map_.end()) continue;
        auto out = it->second;
        if (max_results >= 0 && out.size() > std::size_t(max_results)) out.resize(std::size_t(max_results));
        return out;
    }
    return {};
}

HttpRisProvider::HttpRisProvider(std::string endpoint, std::chrono::seconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

std::vector<RisResult> HttpRisProvider::search(std::string_view image_ref, int max_results) {
    Json req{{"image", backends::encode_image(image_ref)}, {"max_results", max_results}};
    auto res = backends::post_json(endpoint_, req, timeout_);
    try {
        return ris_response_from_json(res);
    } catch (const std::exception& e) {
        throw backends::BackendError(std::string("RIS response invalid: ") + e.what(), false);
    }
}

std::optional<std::string> RetrievalConfig::validate() const {
    if (max_urls < 1) return "max_urls must be >= 1";
    return std::nullopt;
}

std::vector<RisResult> ris_search(std::string_view image_ref, RisProvider& provider, const RetrievalConfig& cfg,
                                  const RetryPolicy& retry) {
    if (auto err = cfg.validate()) throw std::invalid_argument(*err);
    std::string last_error;
    auto delay = retry.base_delay;
    for (int attempt = 0; attempt < std::max(1, retry.attempts); ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(delay);
            delay = std::chrono::milliseconds(static_cast<long long>(double(delay.count()) * retry.factor));
        }
        try {
            auto results = provider.search(image_ref, cfg.max_urls);
            if (results.size() > std::size_t(cfg.max_urls)) results.resize(std::size_t(cfg.max_urls));
            return results;
        } catch (const backends::BackendError& e) {
            last_error = e.what();
            if (!e.retryable()) break;
        }
    }
    throw RetrievalError("reverse image search failed: " + last_error);
}

}  // namespace pillars::evidence
