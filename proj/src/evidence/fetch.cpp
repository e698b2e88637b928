#include "pillars/evidence/fetch.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/types.hpp"

namespace pillars::evidence {

HttpFetcher::HttpFetcher(HttpFetchOptions opts) : opts_(std::move(opts)) {}

FetchResponse HttpFetcher::fetch(const std::string& url) {
    FetchResponse out;
    if (!is_well_formed_url(url)) {
        out.error = "malformed URL";
        return out;
    }
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end + 3);
    const auto origin = url.substr(0, path_start);
    const auto path = path_start == std::string::npos ? std::string("/") : url.substr(path_start);
    for (int attempt = 0; attempt <= opts_.retries; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(opts_.retry_delay * (1 << (attempt - 1)));
        try {
            httplib::Client cli(origin);
            cli.set_follow_location(true);
            cli.set_connection_timeout(opts_.timeout);
            cli.set_read_timeout(opts_.timeout);
            cli.set_write_timeout(opts_.timeout);
            cli.enable_server_certificate_verification(true);
            httplib::Headers headers{{"User-Agent", opts_.user_agent}, {"Accept", "text/html,*/*;q=0.8"}};
            auto res = cli.Get(path, headers);
            if (!res) {
                out = {};
                out.error = httplib::to_string(res.error());
                continue;
            }
            out.status = res->status;
            out.body = res->body;
            out.content_type = res->get_header_value("Content-Type");
            out.error = out.ok() ? "" : "HTTP " + std::to_string(res->status);
            if (res->status >= 500) continue;
            return out;
        } catch (const std::exception& e) {
            out = {};
            out.error = e.what();
        }
    }
    return out;
}

FixtureFetcher::FixtureFetcher(std::filesystem::path dir) : dir_(std::move(dir)) {
    auto text = read_file(dir_ / "index.json");
    if (!text) throw std::runtime_error("fixture index missing: " + (dir_ / "index.json").string());
    auto j = nlohmann::json::parse(*text);
    for (const auto& [url, e] : j.items()) {
        Entry entry;
        entry.file = e.value("file", "");
        entry.status = e.value("status", 200);
        entry.content_type = e.value("content_type", "text/html");
        index_[url] = entry;
    }
}

FetchResponse FixtureFetcher::fetch(const std::string& url) {
    {
        std::lock_guard lock(mu_);
        ++calls_;
    }
    FetchResponse out;
    auto it = index_.find(url);
    if (it == index_.end()) {
        out.status = 404;
        out.error = "HTTP 404";
        return out;
    }
    out.status = it->second.status;
    out.content_type = it->second.content_type;
    if (!out.ok()) {
        out.error = "HTTP " + std::to_string(out.status);
        return out;
    }
    if (auto body = read_file(dir_ / it->second.file)) {
        out.body = std::move(*body);
    } else {
        out.status = 0;
        out.error = "fixture file missing: " + it->second.file;
    }
    return out;
}

std::size_t FixtureFetcher::calls() const {
    std::lock_guard lock(mu_);
    return calls_;
}

PoliteFetcher::PoliteFetcher(std::shared_ptr<Fetcher> inner, std::chrono::milliseconds delay)
    : inner_(std::move(inner)), delay_(delay) {}

PoliteFetcher::Host& PoliteFetcher::host(const std::string& name) {
    std::lock_guard lock(mu_);
    auto& h = hosts_[name];
    if (!h) h = std::make_unique<Host>();
    return *h;
}

FetchResponse PoliteFetcher::fetch(const std::string& url) {
    auto& h = host(url_hostname(url));
    std::lock_guard gate(h.gate);
    {
        std::lock_guard lock(mu_);
        max_in_flight_ = std::max(max_in_flight_, ++h.in_flight);
    }
    if (h.used) std::this_thread::sleep_until(h.last + delay_);
    auto res = inner_->fetch(url);
    h.last = std::chrono::steady_clock::now();
    h.used = true;
    {
        std::lock_guard lock(mu_);
        --h.in_flight;
    }
    return res;
}

int PoliteFetcher::max_host_concurrency() const {
    std::lock_guard lock(mu_);
    return max_in_flight_;
}

}  // namespace pillars::evidence
