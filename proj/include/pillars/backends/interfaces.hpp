#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pillars::backends {

/// Transport or protocol failure talking to a backend. `retryable` marks
/// failures that may succeed on a later attempt (timeouts, 5xx, refused
/// connections).
class BackendError : public std::runtime_error {
public:
    BackendError(const std::string& what, bool retryable) : std::runtime_error(what), retryable_(retryable) {}
    bool retryable() const { return retryable_; }

private:
    bool retryable_;
};

struct ChatMessage {
    std::string role;
    std::string text;
    /// Image references (local paths or URLs); clients encode them.
    std::vector<std::string> images;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.2;
    int max_tokens = 256;
    std::optional<std::int64_t> seed;
};

struct ChatResponse {
    std::string text;
    bool refused = false;
};

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual ChatResponse chat(const ChatRequest& req) = 0;
};

enum class EmbedKind { text, image };

class EmbedBackend {
public:
    virtual ~EmbedBackend() = default;
    /// Unit-norm vector; `content` is text or an image reference.
    virtual std::vector<double> embed(EmbedKind kind, std::string_view content) = 0;
};

struct Classification {
    std::string label;
    double score = 0.0;
};

class ClassifierBackend {
public:
    virtual ~ClassifierBackend() = default;
    virtual Classification classify(std::string_view image_ref) = 0;
};

class ScoringBackend {
public:
    virtual ~ScoringBackend() = default;
    /// Semantic-similarity F1 per (candidate, reference) pair.
    virtual std::vector<double> score(const std::vector<std::string>& candidates,
                                      const std::vector<std::string>& references) = 0;
};

class ArchiveBackend {
public:
    virtual ~ArchiveBackend() = default;
    virtual std::vector<std::string> urls(std::string_view domain, int from_year, int to_year) = 0;
};

}  // namespace pillars::backends
