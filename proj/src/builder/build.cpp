#include "pillars/builder/build.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "pillars/builder/language.hpp"
#include "pillars/core/serialize.hpp"
#include "pillars/core/strings.hpp"
#include "pillars/pipeline/runner.hpp"

namespace pillars::builder {

std::string slug_id(std::string_view url) {
    auto path = url.substr(0, url.find_first_of("?#"));
    if (auto scheme = path.find("://"); scheme != std::string_view::npos) path = path.substr(scheme + 3);
    while (!path.empty() && path.back() == '/') path.remove_suffix(1);
    auto seg = path.substr(path.find_last_of('/') == std::string_view::npos ? 0 : path.find_last_of('/') + 1);
    std::string id;
    for (unsigned char c : seg) {
        if (std::isalnum(c)) id += static_cast<char>(std::tolower(c));
        else if (!id.empty() && id.back() != '-') id += '-';
    }
    if (id.size() > 80) id.resize(80);
    while (!id.empty() && id.back() == '-') id.pop_back();
    return id.empty() ? "article" : id;
}

std::string normalized_title(std::string_view title) { return strings::join(strings::normalize_tokens(title), " "); }

std::vector<std::size_t> find_cross_domain_duplicates(const std::vector<FcArticle>& articles,
                                                      std::vector<DuplicateOf>* dropped) {
    std::vector<std::size_t> order(articles.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& da = articles[a].publication_date;
        const auto& db = articles[b].publication_date;
        if (da.has_value() != db.has_value()) return da.has_value();
        if (!da) return false;
        return days_since_epoch(da->first_day()) < days_since_epoch(db->first_day());
    });

    struct Seen {
        std::size_t index;
        std::string host;
    };
    std::map<std::string, Seen> by_title, by_image;
    std::vector<std::size_t> kept;
    for (auto i : order) {
        const auto& a = articles[i];
        const auto host = url_hostname(a.url);
        const auto title = a.title ? normalized_title(*a.title) : std::string();
        std::optional<std::size_t> original;
        auto check = [&](const std::map<std::string, Seen>& seen, const std::string& key) {
            if (original || key.empty()) return;
            if (auto it = seen.find(key); it != seen.end() && it->second.host != host) original = it->second.index;
        };
        check(by_title, title);
        check(by_image, a.image_url.value_or(""));
        if (original) {
            if (dropped) dropped->push_back({a.url, articles[*original].url});
            continue;
        }
        kept.push_back(i);
        if (!title.empty()) by_title.emplace(title, Seen{i, host});
        if (a.image_url) by_image.emplace(*a.image_url, Seen{i, host});
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::map<std::string, std::size_t> BuildReport::drops_by_reason() const {
    std::map<std::string, std::size_t> out;
    for (const auto& d : drops) ++out[d.reason];
    return out;
}

Json to_json(const BuildReport& r) {
    Json j;
    j["archived"] = r.archived;
    j["candidates"] = r.candidates;
    j["cases"] = r.cases;
    j["drops_by_reason"] = r.drops_by_reason();
    j["drops"] = Json::array();
    for (const auto& d : r.drops) j["drops"].push_back({{"url", d.url}, {"reason", d.reason}, {"detail", d.detail}});
    j["duplicates"] = Json::array();
    for (const auto& d : r.duplicates) j["duplicates"].push_back({{"url", d.url}, {"kept_url", d.kept_url}});
    j["domain_failures"] = Json::array();
    for (const auto& f : r.domain_failures) j["domain_failures"].push_back({{"domain", f.domain}, {"error", f.error}});
    j["splits"] = Json::object();
    for (const auto& [s, n] : r.split_counts) j["splits"][std::string(to_string(s))] = n;
    j["tool_counts"] = r.tool_counts;
    j["warnings"] = r.warnings;
    return j;
}

std::string render_build_report(const BuildReport& r) {
    std::string out = fmt::format("archived URLs      {}\ncandidate articles {}\n", r.archived, r.candidates);
    for (const auto& [reason, n] : r.drops_by_reason()) out += fmt::format("  dropped {:<11}{}\n", reason, n);
    out += fmt::format("corpus cases       {}\n", r.cases);
    for (const auto& [s, n] : r.split_counts) out += fmt::format("  {:<17}{}\n", to_string(s), n);
    for (const auto& f : r.domain_failures) out += fmt::format("archive failure: {}: {}\n", f.domain, f.error);
    for (const auto& d : r.duplicates) out += fmt::format("duplicate (review): {} of {}\n", d.url, d.kept_url);
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
    return out;
}

BuildResult build_corpus(const BuildOptions& opts, BuildBackends& backends) {
    if (!backends.archive || !backends.fetcher || !backends.chat)
        throw std::invalid_argument("build_corpus needs archive, fetcher and chat backends");
    if (auto err = opts.splits.validate()) throw std::invalid_argument(*err);

    BuildResult result;
    auto& report = result.report;
    auto drop = [&](const std::string& url, std::string reason, std::string detail = {}) {
        report.drops.push_back({url, std::move(reason), std::move(detail)});
    };

    auto harvest = collect_archive_urls(opts.harvest, *backends.archive);
    report.archived = harvest.archived;
    report.domain_failures = harvest.failures;
    report.candidates = harvest.urls.size();

    std::vector<std::string> to_scrape;
    for (const auto& u : harvest.urls) {
        if (opts.excluded_urls.count(u)) drop(u, "excluded", "manual exclusion list");
        else to_scrape.push_back(u);
    }

    std::vector<FcArticle> articles;
    for (auto& a : scrape_fc_articles(to_scrape, *backends.fetcher, opts.threads, opts.cache)) {
        if (a.status != ScrapeStatus::ok) drop(a.url, std::string(to_string(a.status)));
        else if (!a.image_url) drop(a.url, "no_image", "article names no image");
        else if (!a.publication_date) drop(a.url, "no_date", "publication date not found");
        else if (const auto text = a.title.value_or("") + "\n" + a.body_text; !looks_english(text))
            drop(a.url, "language", fmt::format("english score {:.3f}", english_trigram_score(text)));
        else articles.push_back(std::move(a));
    }

    std::vector<FcArticle> unique;
    for (auto i : find_cross_domain_duplicates(articles, &report.duplicates)) unique.push_back(articles[i]);
    for (const auto& d : report.duplicates) drop(d.url, "duplicate", "same as " + d.kept_url);

    std::optional<pipeline::CachingChatBackend> cached;
    backends::ChatBackend* chat = backends.chat;
    if (opts.cache) chat = &cached.emplace(*backends.chat, *opts.cache);

    std::vector<ImageCase> cases;
    std::set<std::string> ids;
    auto last_call = std::chrono::steady_clock::time_point{};
    for (const auto& a : unique) {
        if (opts.annotation_interval.count() > 0) {
            std::this_thread::sleep_until(last_call + opts.annotation_interval);
            last_call = std::chrono::steady_clock::now();
        }
        auto outcome = extract_annotations(a, *chat, opts.prompts);
        if (!outcome.annotation) {
            drop(a.url, "annotation", fmt::format("{} after {} attempt(s)", outcome.error, outcome.attempts));
            continue;
        }
        if (outcome.annotation->answers.all_absent()) {
            drop(a.url, "no_answers", "annotator found no pillar answer");
            continue;
        }
        ImageCase c;
        c.id = slug_id(a.url);
        for (int n = 2; ids.count(c.id); ++n) c.id = fmt::format("{}-{}", slug_id(a.url), n);
        c.image_ref = *a.image_url;
        c.fc_article_url = a.url;
        c.fc_publication_date = *a.publication_date;
        c.claimed = outcome.annotation->claimed;
        c.gold = outcome.annotation->answers;
        c.image_type = outcome.annotation->image_type.value_or(ImageType::other);
        const auto match = opts.strategies.detect(a.body_text);
        c.verification_strategies = match.strategies;
        if (auto err = c.validate()) {
            drop(a.url, "invalid", *err);
            continue;
        }
        for (const auto& t : match.tools) ++report.tool_counts[t];
        ids.insert(c.id);
        cases.push_back(std::move(c));
    }

    SplitReport splits;
    cases = assign_splits(std::move(cases), opts.splits, &splits);
    std::sort(cases.begin(), cases.end(), [](const ImageCase& a, const ImageCase& b) { return a.id < b.id; });
    report.split_counts = splits.counts;
    report.warnings = splits.warnings;
    report.cases = cases.size();
    result.cases = std::move(cases);
    return result;
}

}  // namespace pillars::builder
