#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/serialize.hpp"

namespace pillars::backends {

/// POSTs JSON to a full endpoint URL ("http://host:port/v1/chat"). Transport
/// failures, 429 and 5xx raise retryable BackendErrors; other non-200
/// statuses and unparseable bodies raise non-retryable ones.
Json post_json(const std::string& endpoint, const Json& body, std::chrono::seconds timeout);

/// Wire form of an image reference: base64 of the file for readable local
/// paths, the reference itself for URLs. Throws a non-retryable
/// BackendError for a path that cannot be read.
std::string encode_image(std::string_view image_ref);

/// Clients for the model-adapter wire contract. `base_url` is the service
/// root; each client appends its /v1/... route. All are stateless and safe to
/// share between threads.
class HttpChatBackend : public ChatBackend {
public:
    explicit HttpChatBackend(std::string base_url, std::chrono::seconds timeout = std::chrono::seconds(120));
    ChatResponse chat(const ChatRequest& req) override;

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

class HttpEmbedBackend : public EmbedBackend {
public:
    explicit HttpEmbedBackend(std::string base_url, std::chrono::seconds timeout = std::chrono::seconds(60));
    std::vector<double> embed(EmbedKind kind, std::string_view content) override;

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

class HttpClassifierBackend : public ClassifierBackend {
public:
    explicit HttpClassifierBackend(std::string base_url, std::chrono::seconds timeout = std::chrono::seconds(60));
    Classification classify(std::string_view image_ref) override;

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

class HttpScoringBackend : public ScoringBackend {
public:
    explicit HttpScoringBackend(std::string base_url, std::chrono::seconds timeout = std::chrono::seconds(120));
    std::vector<double> score(const std::vector<std::string>& candidates,
                              const std::vector<std::string>& references) override;

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

/// {domain, from_year, to_year} -> {urls}. A CDX server can sit behind a thin
/// adapter exposing this route.
class HttpArchiveBackend : public ArchiveBackend {
public:
    explicit HttpArchiveBackend(std::string base_url, std::chrono::seconds timeout = std::chrono::seconds(60));
    std::vector<std::string> urls(std::string_view domain, int from_year, int to_year) override;

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

std::string_view to_string(EmbedKind k);

}  // namespace pillars::backends
