#include "pillars/backends/mock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <fmt/format.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/hash.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::backends {

namespace {

std::vector<double> normalized(std::vector<double> v) {
    double n = 0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n > 0)
        for (double& x : v) x /= n;
    return v;
}

std::vector<double> hash_vector(std::string_view seed, std::size_t dim) {
    std::vector<double> v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        auto h = sha256_hex(fmt::format("{}#{}", seed, k));
        auto word = static_cast<std::uint32_t>(std::stoul(h.substr(0, 8), nullptr, 16));
        v[k] = double(word) / double(UINT32_MAX) * 2.0 - 1.0;
    }
    return normalized(std::move(v));
}

bool contains_all(const std::string& haystack_lower, const std::vector<std::string>& needles) {
    return std::all_of(needles.begin(), needles.end(),
                       [&](const std::string& n) { return haystack_lower.find(n) != std::string::npos; });
}

std::vector<std::string> lowered(const Json& arr) {
    std::vector<std::string> out;
    for (const auto& s : arr) out.push_back(strings::lower(s.get<std::string>()));
    return out;
}

ChatResponse response_from(const Json& j) {
    return {j.value("text", std::string()), j.value("refused", false)};
}

}  // namespace

ImageKeys::ImageKeys(const std::filesystem::path& images_dir) {
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(images_dir, ec)) {
        if (!entry.is_regular_file()) continue;
        if (auto bytes = read_file(entry.path())) by_hash_[sha256_hex(*bytes)] = entry.path().filename().string();
    }
}

std::string ImageKeys::key_of_ref(std::string_view image_ref) {
    auto ref = image_ref.substr(0, image_ref.find_first_of("?#"));
    auto slash = ref.find_last_of("/\\");
    return std::string(slash == std::string_view::npos ? ref : ref.substr(slash + 1));
}

std::string ImageKeys::key_of_bytes(std::string_view bytes) const {
    auto h = sha256_hex(bytes);
    auto it = by_hash_.find(h);
    return it == by_hash_.end() ? "sha256:" + h : it->second;
}

MockChat::MockChat(const Json& spec) {
    default_ = spec.value("default", std::string(kNotEnoughInformation));
    if (auto it = spec.find("by_hash"); it != spec.end())
        for (const auto& [k, v] : it->items()) by_hash_[k] = response_from(v);
    if (auto it = spec.find("rules"); it != spec.end())
        for (const auto& r : *it) {
            Rule rule;
            rule.contains = lowered(r.value("contains", Json::array()));
            if (r.contains("image")) rule.image = r["image"].get<std::string>();
            rule.response = response_from(r);
            rules_.push_back(std::move(rule));
        }
}

std::string MockChat::request_text(const ChatRequest& req) {
    std::vector<std::string> parts;
    for (const auto& m : req.messages) parts.push_back(m.text);
    return strings::join(parts, "\n");
}

ChatResponse MockChat::chat(const ChatRequest& req) {
    std::vector<std::string> keys;
    for (const auto& m : req.messages)
        for (const auto& img : m.images) keys.push_back(ImageKeys::key_of_ref(img));
    return answer(request_text(req), keys);
}

ChatResponse MockChat::answer(const std::string& text, const std::vector<std::string>& image_keys) const {
    if (auto it = by_hash_.find(sha256_hex(text)); it != by_hash_.end()) return it->second;
    const auto lower = strings::lower(text);
    for (const auto& r : rules_) {
        if (r.image && (image_keys.empty() || image_keys.back() != *r.image)) continue;
        if (contains_all(lower, r.contains)) return r.response;
    }
    return {default_, false};
}

MockEmbed::MockEmbed(const Json& spec) {
    dim_ = spec.value("dim", std::size_t{8});
    auto checked = [&](const Json& v, const std::string& where) {
        auto vec = v.get<std::vector<double>>();
        if (vec.size() != dim_)
            throw std::invalid_argument(fmt::format("embedding for {} has {} values, expected {}", where, vec.size(), dim_));
        return normalized(std::move(vec));
    };
    if (auto it = spec.find("images"); it != spec.end())
        for (const auto& [k, v] : it->items()) images_[k] = checked(v, k);
    if (auto it = spec.find("text_rules"); it != spec.end())
        for (const auto& r : *it) text_rules_.emplace_back(lowered(r.at("contains")), checked(r.at("vector"), "text rule"));
}

std::vector<double> MockEmbed::hashed(std::string_view seed) const { return hash_vector(seed, dim_); }

std::vector<double> MockEmbed::embed_image_key(const std::string& key) const {
    auto it = images_.find(key);
    return it != images_.end() ? it->second : hashed("image:" + key);
}

std::vector<double> MockEmbed::embed_text(std::string_view text) const {
    const auto lower = strings::lower(text);
    for (const auto& [needles, vec] : text_rules_)
        if (contains_all(lower, needles)) return vec;
    return hashed("text:" + std::string(text));
}

std::vector<double> MockEmbed::embed(EmbedKind kind, std::string_view content) {
    return kind == EmbedKind::image ? embed_image_key(ImageKeys::key_of_ref(content)) : embed_text(content);
}

MockClassifier::MockClassifier(const Json& spec) {
    for (const auto& [k, v] : spec.items()) labels_[k] = {v.at("label").get<std::string>(), v.value("score", 1.0)};
}

Classification MockClassifier::classify_key(const std::string& key) const {
    auto it = labels_.find(key);
    return it != labels_.end() ? it->second : Classification{"non_manipulated", 0.5};
}

Classification MockClassifier::classify(std::string_view image_ref) { return classify_key(ImageKeys::key_of_ref(image_ref)); }

double MockScorer::pair_f1(std::string_view candidate, std::string_view reference) {
    constexpr std::size_t kDim = 16;
    auto ct = strings::normalize_tokens(candidate);
    auto rt = strings::normalize_tokens(reference);
    if (ct.empty() || rt.empty()) return 0.0;
    std::map<std::string, std::vector<double>> vecs;
    auto vec = [&](const std::string& t) -> const std::vector<double>& {
        auto it = vecs.find(t);
        if (it == vecs.end()) it = vecs.emplace(t, hash_vector("tok:" + t, kDim)).first;
        return it->second;
    };
    auto sim = [&](const std::string& a, const std::string& b) {
        if (a == b) return 1.0;
        const auto& va = vec(a);
        const auto& vb = vec(b);
        double d = 0;
        for (std::size_t k = 0; k < kDim; ++k) d += va[k] * vb[k];
        return std::clamp(d, 0.0, 1.0);
    };
    auto greedy = [&](const std::vector<std::string>& from, const std::vector<std::string>& to) {
        double total = 0;
        for (const auto& a : from) {
            double best = 0;
            for (const auto& b : to) best = std::max(best, sim(a, b));
            total += best;
        }
        return total / double(from.size());
    };
    const double p = greedy(ct, rt);
    const double r = greedy(rt, ct);
    return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

std::vector<double> MockScorer::score(const std::vector<std::string>& candidates,
                                      const std::vector<std::string>& references) {
    if (candidates.size() != references.size()) throw BackendError("score: candidates and references differ", false);
    std::vector<double> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) out.push_back(pair_f1(candidates[i], references[i]));
    return out;
}

MockArchive::MockArchive(const Json& spec) {
    for (const auto& [domain, list] : spec.items()) {
        auto& entries = by_domain_[strings::lower(domain)];
        for (const auto& e : list) {
            if (e.is_string()) {
                entries.push_back({e.get<std::string>(), std::nullopt});
                continue;
            }
            Entry entry{e.at("url").get<std::string>(), std::nullopt};
            auto ts = e.value("timestamp", std::string());
            if (ts.size() >= 4) entry.year = std::stoi(ts.substr(0, 4));
            entries.push_back(std::move(entry));
        }
    }
}

std::vector<std::string> MockArchive::urls(std::string_view domain, int from_year, int to_year) {
    auto it = by_domain_.find(strings::lower(domain));
    if (it == by_domain_.end()) throw BackendError("archive has no index for domain " + std::string(domain), false);
    std::vector<std::string> out;
    for (const auto& e : it->second)
        if (!e.year || (*e.year >= from_year && *e.year <= to_year)) out.push_back(e.url);
    return out;
}

Json load_mock_file(const std::filesystem::path& dir, const std::string& name, Json fallback) {
    auto text = read_file(dir / name);
    if (!text) return fallback;
    try {
        return Json::parse(*text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(fmt::format("{}: {}", (dir / name).string(), e.what()));
    }
}

}  // namespace pillars::backends
