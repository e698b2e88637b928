#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/serialize.hpp"

namespace pillars::backends {

/// Maps image references and image bytes to a stable key (the file name).
/// Lets HTTP-side mocks, which only see encoded bytes, agree with in-process
/// mocks, which see paths.
class ImageKeys {
public:
    ImageKeys() = default;
    /// Hashes every regular file in `images_dir` (non-recursive).
    explicit ImageKeys(const std::filesystem::path& images_dir);

    /// File name of a path or URL reference.
    static std::string key_of_ref(std::string_view image_ref);
    /// Key for raw image bytes; falls back to "sha256:<hex>" for unknown data.
    std::string key_of_bytes(std::string_view bytes) const;

private:
    std::map<std::string, std::string> by_hash_;
};

/// Canned chat answers. The request text is every message's text joined by
/// newlines; attached images are reduced to file names.
///
/// chat.json:
///   {"by_hash": {"<sha256 of request text>": {"text": ..., "refused": bool}},
///    "rules": [{"contains": [..], "image": "name.jpg"?, "text": ..., "refused": bool?}],
///    "default": "Not enough information"}
///
/// by_hash wins; otherwise the first rule whose substrings all occur
/// (case-insensitive) and whose image, if given, is the last attached image
/// (the query image; demonstration images come before it).
class MockChat : public ChatBackend {
public:
    explicit MockChat(const Json& spec);
    static std::string request_text(const ChatRequest& req);
    ChatResponse chat(const ChatRequest& req) override;
    /// Same lookup with images already reduced to keys.
    ChatResponse answer(const std::string& text, const std::vector<std::string>& image_keys) const;

private:
    struct Rule {
        std::vector<std::string> contains;
        std::optional<std::string> image;
        ChatResponse response;
    };
    std::map<std::string, ChatResponse> by_hash_;
    std::vector<Rule> rules_;
    std::string default_;
};

/// embeddings.json:
///   {"dim": 8, "images": {"name.jpg": [..]},
///    "text_rules": [{"contains": [..], "vector": [..]}]}
///
/// Unlisted content gets a pseudo-random vector derived from SHA-256 of the
/// kind and content. Every vector is L2-normalized.
class MockEmbed : public EmbedBackend {
public:
    explicit MockEmbed(const Json& spec);
    std::vector<double> embed(EmbedKind kind, std::string_view content) override;
    /// Image embedding by key (see ImageKeys).
    std::vector<double> embed_image_key(const std::string& key) const;
    std::vector<double> embed_text(std::string_view text) const;
    std::size_t dim() const { return dim_; }

private:
    std::vector<double> hashed(std::string_view seed) const;

    std::size_t dim_ = 8;
    std::map<std::string, std::vector<double>> images_;
    std::vector<std::pair<std::vector<std::string>, std::vector<double>>> text_rules_;
};

/// labels.json: {"name.jpg": {"label": "manipulated", "score": 0.9}}.
/// Unlisted images are non_manipulated with score 0.5.
class MockClassifier : public ClassifierBackend {
public:
    explicit MockClassifier(const Json& spec);
    Classification classify(std::string_view image_ref) override;
    Classification classify_key(const std::string& key) const;

private:
    std::map<std::string, Classification> labels_;
};

/// Token-level similarity F1: greedy bidirectional max-cosine matching of
/// hashed token vectors. Identical tokens have cosine 1, so identical
/// strings score exactly 1.
class MockScorer : public ScoringBackend {
public:
    std::vector<double> score(const std::vector<std::string>& candidates,
                              const std::vector<std::string>& references) override;
    static double pair_f1(std::string_view candidate, std::string_view reference);
};

/// archive.json: {"domain": [url | {"url": .., "timestamp": "YYYYMMDDhhmmss"}]}.
/// Entries without a timestamp match every year range.
class MockArchive : public ArchiveBackend {
public:
    explicit MockArchive(const Json& spec);
    std::vector<std::string> urls(std::string_view domain, int from_year, int to_year) override;

private:
    struct Entry {
        std::string url;
        std::optional<int> year;
    };
    std::map<std::string, std::vector<Entry>> by_domain_;
};

/// Reads `<dir>/<name>` as JSON, or returns `fallback` when it is absent.
Json load_mock_file(const std::filesystem::path& dir, const std::string& name, Json fallback);

}  // namespace pillars::backends
