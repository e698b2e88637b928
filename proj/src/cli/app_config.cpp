#include "pillars/cli/app_config.hpp"

#include <set>

#include <fmt/format.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::cli {

namespace {

const std::set<std::string> kKeys{"corpus",      "cache_dir",   "use_cache",      "gazetteer",      "blocklist",
                                  "image_root",  "backend_url", "endpoints",      "mock",           "run",
                                  "repeat_runs", "threads",     "scrape_threads", "retrieval",      "fetch_delay_ms",
                                  "retry",       "build"};
const std::set<std::string> kServices{"chat", "embed", "classify", "score", "ris", "archive"};

template <class T>
T get(const Json& j, const char* key, const T& fallback, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    try {
        return it->get<T>();
    } catch (const std::exception&) {
        throw ConfigError(fmt::format("{}{}: wrong type", where, key));
    }
}

std::filesystem::path path_of(const Json& j, const char* key, const std::filesystem::path& fallback,
                              const std::filesystem::path& base, const std::string& where = "") {
    auto s = get<std::string>(j, key, "", where);
    if (s.empty()) return fallback;
    std::filesystem::path p(s);
    return p.is_absolute() ? p : (base / p).lexically_normal();
}

}  // namespace

std::string AppConfig::endpoint(const std::string& service) const {
    if (auto it = endpoints.find(service); it != endpoints.end() && !it->second.empty()) return it->second;
    return backend_url;
}

AppConfig app_config_from_json(const Json& j, const std::filesystem::path& base) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!kKeys.count(k)) throw ConfigError("unknown config key '" + k + "'");

    AppConfig c;
    c.corpus = path_of(j, "corpus", base / c.corpus, base);
    c.cache_dir = path_of(j, "cache_dir", base / c.cache_dir, base);
    c.use_cache = get(j, "use_cache", true, "");
    c.gazetteer = path_of(j, "gazetteer", {}, base);
    c.blocklist = path_of(j, "blocklist", {}, base);
    c.image_root = path_of(j, "image_root", base, base);
    c.backend_url = get<std::string>(j, "backend_url", "", "");
    if (auto it = j.find("endpoints"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("endpoints must be an object");
        for (const auto& [k, v] : it->items()) {
            if (!kServices.count(k)) throw ConfigError("unknown endpoint '" + k + "'");
            c.endpoints[k] = get<std::string>(*it, k.c_str(), "", "endpoints.");
        }
    }
    if (auto it = j.find("mock"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("mock must be an object");
        c.mock = get(*it, "enabled", false, "mock.");
        c.mock_dir = path_of(*it, "dir", {}, base, "mock.");
        c.mock_images = path_of(*it, "images", {}, base, "mock.");
        c.mock_web = path_of(*it, "web", {}, base, "mock.");
    }
    if (auto it = j.find("run"); it != j.end()) {
        try {
            c.run = pipeline::run_config_from_json(*it, c.run);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("run: ") + e.what());
        }
    }
    c.repeat_runs = get(j, "repeat_runs", c.repeat_runs, "");
    c.threads = get(j, "threads", c.threads, "");
    c.scrape_threads = get(j, "scrape_threads", c.scrape_threads, "");
    c.fetch_delay_ms = get(j, "fetch_delay_ms", c.fetch_delay_ms, "");
    if (auto it = j.find("retrieval"); it != j.end()) {
        c.max_urls = get(*it, "max_urls", c.max_urls, "retrieval.");
        c.strict_undated = get(*it, "strict_undated", c.strict_undated, "retrieval.");
    }
    if (auto it = j.find("retry"); it != j.end()) {
        c.retry_attempts = get(*it, "attempts", c.retry_attempts, "retry.");
        c.retry_delay_ms = get(*it, "base_delay_ms", c.retry_delay_ms, "retry.");
    }
    if (auto it = j.find("build"); it != j.end()) {
        c.harvest.domains = get(*it, "domains", c.harvest.domains, "build.");
        c.harvest.start_year = get(*it, "start_year", c.harvest.start_year, "build.");
        c.harvest.end_year = get(*it, "end_year", c.harvest.end_year, "build.");
        c.harvest.keywords = get(*it, "keywords", c.harvest.keywords, "build.");
        if (it->contains("exclusions")) c.exclusions = path_of(*it, "exclusions", {}, base, "build.");
    }
    return c;
}

AppConfig load_app_config(const std::filesystem::path& path) {
    auto text = read_file(path);
    if (!text) throw ConfigError("cannot read config " + path.string());
    auto j = Json::parse(*text, nullptr, false, true);
    if (j.is_discarded()) throw ConfigError("config " + path.string() + " is not valid JSON");
    return app_config_from_json(j, std::filesystem::absolute(path).parent_path());
}

void validate(const AppConfig& c, const ConfigNeeds& needs) {
    if (auto e = c.run.validate()) throw ConfigError(*e);
    if (auto e = c.harvest.validate()) throw ConfigError(*e);
    if (c.repeat_runs < 1) throw ConfigError("repeat_runs must be at least 1");
    if (c.max_urls < 1) throw ConfigError("retrieval.max_urls must be at least 1");
    if (c.retry_attempts < 1) throw ConfigError("retry.attempts must be at least 1");
    // Required paths must be set; optional ones must exist when set.
    auto need = [](bool required, const std::filesystem::path& p, const char* what) {
        if (p.empty()) {
            if (required) throw ConfigError(fmt::format("no {} configured", what));
            return;
        }
        if (!std::filesystem::exists(p)) throw ConfigError(fmt::format("{} not found: {}", what, p.string()));
    };
    if (needs.corpus) need(true, c.corpus, "corpus");
    need(needs.gazetteer, c.gazetteer, "gazetteer");
    need(needs.blocklist, c.blocklist, "blocklist");
    if (c.mock) {
        need(true, c.mock_dir, "mock directory");
        need(true, c.mock_images, "mock image directory");
    }
}

}  // namespace pillars::cli
