#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pillars/core/types.hpp"

namespace pillars::evidence {

/// One decision made by a filter. Kept items appear only when flagged.
struct FilterDecision {
    std::string url;
    bool kept = false;
    std::string reason;
};
using FilterLog = std::vector<FilterDecision>;

/// True when the earliest day `published` can denote is after the last day
/// `fc_date` can denote. Partial dates therefore leak only when they cannot
/// overlap the fact-check date.
bool published_after(const DateValue& published, const DateValue& fc_date);

/// Drops items published after the fact-check. Undated items are kept and
/// flagged, or dropped when `strict_undated` is set.
std::vector<EvidenceItem> filter_temporal(const std::vector<EvidenceItem>& items, const DateValue& fc_date,
                                          bool strict_undated, FilterLog* log = nullptr);

/// Hostname patterns matched on label boundaries: "factly.in" matches
/// factly.in and www.factly.in, not notfactly.in.
class Blocklist {
public:
    Blocklist() = default;
    explicit Blocklist(const std::set<std::string>& patterns);

    /// One pattern per line, '#' starts a comment. Throws std::runtime_error
    /// when the file cannot be read.
    static Blocklist load_file(const std::filesystem::path& path);
    static Blocklist parse(std::string_view text);

    void add(std::string_view pattern);
    bool matches(std::string_view hostname) const;
    const std::set<std::string>& patterns() const { return patterns_; }

private:
    std::set<std::string> patterns_;
};

/// Falls back to the URL's host when `hostname` is empty.
std::string item_hostname(const EvidenceItem& item);

std::vector<EvidenceItem> filter_fc_domains(const std::vector<EvidenceItem>& items, const Blocklist& blocklist,
                                            FilterLog* log = nullptr);

}  // namespace pillars::evidence
