#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace pillars::evidence {

struct FetchResponse {
    /// 0 when the transport failed before an HTTP status was received.
    int status = 0;
    std::string body;
    std::string content_type;
    std::string error;

    bool ok() const { return status >= 200 && status < 300; }
};

class Fetcher {
public:
    virtual ~Fetcher() = default;
    /// Never throws; failures are reported through the response.
    virtual FetchResponse fetch(const std::string& url) = 0;
};

struct HttpFetchOptions {
    std::chrono::seconds timeout{15};
    int retries = 2;
    std::string user_agent = "pillars-evidence/1.0 (+research crawler)";
    std::chrono::milliseconds retry_delay{500};
};

/// HTTP(S) GET following redirects. Retries transport errors and 5xx.
class HttpFetcher : public Fetcher {
public:
    explicit HttpFetcher(HttpFetchOptions opts = {});
    FetchResponse fetch(const std::string& url) override;

private:
    HttpFetchOptions opts_;
};

/// Serves pages from a directory. `index.json` maps each URL to
/// {"file": relative path, "status": int (default 200),
///  "content_type": string (default text/html)}. Unknown URLs are 404.
class FixtureFetcher : public Fetcher {
public:
    explicit FixtureFetcher(std::filesystem::path dir);
    FetchResponse fetch(const std::string& url) override;
    std::size_t calls() const;

private:
    struct Entry {
        std::string file;
        int status = 200;
        std::string content_type = "text/html";
    };
    std::filesystem::path dir_;
    std::map<std::string, Entry> index_;
    mutable std::mutex mu_;
    std::size_t calls_ = 0;
};

/// Serializes requests per host and spaces them by `delay`. Share one
/// instance across every worker that talks to the network.
class PoliteFetcher : public Fetcher {
public:
    PoliteFetcher(std::shared_ptr<Fetcher> inner, std::chrono::milliseconds delay);
    FetchResponse fetch(const std::string& url) override;
    /// Highest number of simultaneous in-flight requests seen for one host.
    int max_host_concurrency() const;

private:
    struct Host {
        std::mutex gate;
        std::chrono::steady_clock::time_point last{};
        bool used = false;
        int in_flight = 0;
    };
    Host& host(const std::string& name);

    std::shared_ptr<Fetcher> inner_;
    std::chrono::milliseconds delay_;
    mutable std::mutex mu_;
    std::map<std::string, std::unique_ptr<Host>> hosts_;
    int max_in_flight_ = 0;
};

}  // namespace pillars::evidence
