#include "pillars/evidence/filters.hpp"

#include <stdexcept>

#include <spdlog/spdlog.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::evidence {

bool published_after(const DateValue& published, const DateValue& fc_date) {
    return days_since_epoch(published.first_day()) > days_since_epoch(fc_date.last_day());
}

std::vector<EvidenceItem> filter_temporal(const std::vector<EvidenceItem>& items, const DateValue& fc_date,
                                          bool strict_undated, FilterLog* log) {
    std::vector<EvidenceItem> out;
    out.reserve(items.size());
    for (const auto& it : items) {
        if (!it.publication_date) {
            if (log) log->push_back({it.url, !strict_undated, "undated"});
            if (strict_undated) {
                spdlog::debug("temporal filter: dropped undated {}", it.url);
                continue;
            }
            out.push_back(it);
            continue;
        }
        if (published_after(*it.publication_date, fc_date)) {
            if (log) log->push_back({it.url, false, "published " + it.publication_date->iso() + " after " + fc_date.iso()});
            spdlog::debug("temporal filter: dropped {} ({} > {})", it.url, it.publication_date->iso(), fc_date.iso());
            continue;
        }
        out.push_back(it);
    }
    return out;
}

Blocklist::Blocklist(const std::set<std::string>& patterns) {
    for (const auto& p : patterns) add(p);
}

Blocklist Blocklist::parse(std::string_view text) {
    Blocklist b;
    for (const auto& line : strings::split(text, "\n")) {
        auto l = std::string_view(line);
        if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        b.add(l);
    }
    return b;
}

Blocklist Blocklist::load_file(const std::filesystem::path& path) {
    auto text = read_file(path);
    if (!text) throw std::runtime_error("cannot read blocklist '" + path.string() + "'");
    return parse(*text);
}

void Blocklist::add(std::string_view pattern) {
    auto p = strings::lower(strings::trim(pattern));
    if (p.starts_with("*.")) p.erase(0, 2);
    while (p.starts_with(".")) p.erase(0, 1);
    while (p.ends_with(".")) p.pop_back();
    if (!p.empty()) patterns_.insert(std::move(p));
}

bool Blocklist::matches(std::string_view hostname) const {
    auto h = strings::lower(strings::trim(hostname));
    while (h.ends_with(".")) h.pop_back();
    if (h.empty()) return false;
    // Walk the label suffixes: a.b.c -> a.b.c, b.c, c
    std::string_view rest = h;
    while (true) {
        if (patterns_.count(std::string(rest))) return true;
        auto dot = rest.find('.');
        if (dot == std::string_view::npos) return false;
        rest.remove_prefix(dot + 1);
    }
}

std::string item_hostname(const EvidenceItem& item) {
    return item.hostname.empty() ? url_hostname(item.url) : strings::lower(item.hostname);
}

std::vector<EvidenceItem> filter_fc_domains(const std::vector<EvidenceItem>& items, const Blocklist& blocklist,
                                            FilterLog* log) {
    std::vector<EvidenceItem> out;
    out.reserve(items.size());
    for (const auto& it : items) {
        auto host = item_hostname(it);
        if (blocklist.matches(host)) {
            if (log) log->push_back({it.url, false, "fact-checking domain " + host});
            spdlog::debug("domain filter: dropped {}", it.url);
            continue;
        }
        out.push_back(it);
    }
    return out;
}

}  // namespace pillars::evidence
