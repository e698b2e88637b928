#include "pillars/evidence/cache.hpp"

#include <spdlog/spdlog.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/hash.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::evidence {

namespace {
constexpr std::string_view kMagic = "pillars-cache/1 ";
}

std::string normalize_cache_key(std::string_view key) {
    auto k = std::string(strings::trim(key));
    const auto scheme_end = k.find("://");
    if (scheme_end == std::string::npos) return k;
    if (auto hash = k.find('#'); hash != std::string::npos) k.erase(hash);
    auto host_end = k.find_first_of("/?", scheme_end + 3);
    if (host_end == std::string::npos) host_end = k.size();
    for (std::size_t i = 0; i < host_end; ++i) k[i] = char(std::tolower(static_cast<unsigned char>(k[i])));
    return k;
}

EvidenceCache::EvidenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path EvidenceCache::path_for(std::string_view ns, std::string_view key) const {
    const auto h = sha256_hex(normalize_cache_key(key));
    return dir_ / std::string(ns) / h.substr(0, 2) / h;
}

std::optional<std::string> EvidenceCache::get(std::string_view ns, std::string_view key) const {
    const auto path = path_for(ns, key);
    auto raw = read_file(path);
    if (!raw) return std::nullopt;
    // Header: magic, 64 hex digest of the payload, newline.
    const std::size_t header = kMagic.size() + 64 + 1;
    if (raw->size() < header || raw->compare(0, kMagic.size(), kMagic) != 0 || (*raw)[header - 1] != '\n') {
        spdlog::warn("cache entry {} is corrupt; treating as miss", path.string());
        return std::nullopt;
    }
    auto payload = raw->substr(header);
    if (raw->compare(kMagic.size(), 64, sha256_hex(payload)) != 0) {
        spdlog::warn("cache entry {} failed its checksum; treating as miss", path.string());
        return std::nullopt;
    }
    return payload;
}

bool EvidenceCache::put(std::string_view ns, std::string_view key, std::string_view bytes) const {
    const auto path = path_for(ns, key);
    std::error_code ec;
    const bool existed = std::filesystem::exists(path, ec);
    if (existed) spdlog::debug("cache overwrite {}:{}", ns, key);
    std::string blob(kMagic);
    blob += sha256_hex(bytes);
    blob += '\n';
    blob += bytes;
    write_file_atomic(path, blob);
    return existed;
}

}  // namespace pillars::evidence
