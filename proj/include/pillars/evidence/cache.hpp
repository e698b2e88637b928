#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace pillars::evidence {

/// Lowercases scheme and host, drops the fragment and trims whitespace.
/// Non-URL keys (image paths) are only trimmed.
std::string normalize_cache_key(std::string_view key);

/// Content-addressed artifact store under `dir/<namespace>/<sha256[0:2]>/`.
/// Each entry carries a checksum header; entries that fail verification are
/// misses. Writes are atomic, so concurrent readers never see partial data.
class EvidenceCache {
public:
    explicit EvidenceCache(std::filesystem::path dir);

    std::optional<std::string> get(std::string_view ns, std::string_view key) const;
    /// Overwrites an existing entry; returns true when one was replaced.
    bool put(std::string_view ns, std::string_view key, std::string_view bytes) const;

    std::filesystem::path path_for(std::string_view ns, std::string_view key) const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace pillars::evidence
