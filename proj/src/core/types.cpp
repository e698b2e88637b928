#include "pillars/core/types.hpp"

#include <array>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "pillars/core/strings.hpp"

namespace pillars {

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s) {
    for (const auto& [value, name] : table)
        if (name == s) return value;
    return std::nullopt;
}

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
    for (const auto& [value, name] : table)
        if (value == v) return name;
    return "?";
}

constexpr std::array<std::pair<Provenance, std::string_view>, 3> kProvenance{{
    {Provenance::yes, "Yes"}, {Provenance::no, "No"}, {Provenance::unknown, "Unknown"}}};

constexpr std::array<std::pair<Pillar, std::string_view>, 4> kPillar{{
    {Pillar::source, "source"}, {Pillar::date, "date"}, {Pillar::location, "location"},
    {Pillar::motivation, "motivation"}}};

constexpr std::array<std::pair<ImageType, std::string_view>, 5> kImageType{{
    {ImageType::out_of_context, "out_of_context"}, {ImageType::manipulated, "manipulated"},
    {ImageType::fake, "fake"}, {ImageType::true_image, "true"}, {ImageType::other, "other"}}};

constexpr std::array<std::pair<VerificationStrategy, std::string_view>, 4> kStrategy{{
    {VerificationStrategy::reverse_image_search, "reverse_image_search"},
    {VerificationStrategy::keyword_search, "keyword_search"},
    {VerificationStrategy::geolocation, "geolocation"}, {VerificationStrategy::other, "other"}}};

constexpr std::array<std::pair<Split, std::string_view>, 3> kSplit{{
    {Split::train, "train"}, {Split::val, "val"}, {Split::test, "test"}}};

constexpr std::array<std::pair<ScrapeStatus, std::string_view>, 4> kScrapeStatus{{
    {ScrapeStatus::ok, "ok"}, {ScrapeStatus::fetch_error, "fetch_error"},
    {ScrapeStatus::extract_error, "extract_error"}, {ScrapeStatus::blocked, "blocked"}}};

}  // namespace

std::string_view to_string(Provenance v) { return name_of(kProvenance, v); }
std::string_view to_string(Pillar v) { return name_of(kPillar, v); }
std::string_view to_string(ImageType v) { return name_of(kImageType, v); }
std::string_view to_string(VerificationStrategy v) { return name_of(kStrategy, v); }
std::string_view to_string(Split v) { return name_of(kSplit, v); }
std::string_view to_string(ScrapeStatus v) { return name_of(kScrapeStatus, v); }

std::optional<Provenance> parse_provenance(std::string_view s) {
    for (const auto& [value, name] : kProvenance)
        if (strings::iequals(name, strings::trim(s))) return value;
    return std::nullopt;
}
std::optional<Pillar> parse_pillar(std::string_view s) { return lookup(kPillar, s); }
std::optional<ImageType> parse_image_type(std::string_view s) { return lookup(kImageType, s); }
std::optional<VerificationStrategy> parse_strategy(std::string_view s) { return lookup(kStrategy, s); }
std::optional<Split> parse_split(std::string_view s) { return lookup(kSplit, s); }
std::optional<ScrapeStatus> parse_scrape_status(std::string_view s) { return lookup(kScrapeStatus, s); }

bool PillarAnswers::present(Pillar p) const {
    switch (p) {
        case Pillar::source: return source.has_value();
        case Pillar::date: return !date.empty();
        case Pillar::location: return !location.empty();
        case Pillar::motivation: return motivation.has_value();
    }
    return false;
}

bool PillarAnswers::all_absent() const {
    if (provenance == Provenance::yes) return false;
    for (auto p : kGeneratedPillars)
        if (present(p)) return false;
    return true;
}

std::optional<std::string> LocationValue::validate() const {
    if (strings::trim(text).empty()) return std::string("location text is empty");
    if (coords) {
        if (!std::isfinite(coords->lat) || !std::isfinite(coords->lon))
            return std::string("location coordinates are not finite");
        if (coords->lat < -90 || coords->lat > 90 || coords->lon < -180 || coords->lon > 180)
            return fmt::format("coordinates ({}, {}) out of range", coords->lat, coords->lon);
    }
    return std::nullopt;
}

std::optional<std::string> PillarAnswers::validate() const {
    if (source && strings::trim(*source).empty()) return std::string("source is an empty string");
    if (motivation && strings::trim(*motivation).empty()) return std::string("motivation is an empty string");
    for (const auto& d : date)
        if (auto e = d.validate()) return "date: " + *e;
    for (const auto& l : location)
        if (auto e = l.validate()) return "location: " + *e;
    return std::nullopt;
}

std::optional<std::string> ImageCase::validate() const {
    if (id.empty()) return std::string("id is empty");
    if (image_ref.empty()) return std::string("image_ref is empty");
    if (auto e = fc_publication_date.validate()) return "fc_publication_date: " + *e;
    if (!fc_publication_date.has_day()) return std::string("fc_publication_date must have day granularity");
    if (claimed.claimed_date)
        if (auto e = claimed.claimed_date->validate()) return "claimed_date: " + *e;
    if (auto e = gold.validate()) return "gold." + *e;
    return std::nullopt;
}

std::optional<std::string> EvidenceItem::validate() const {
    if (!is_well_formed_url(url)) return fmt::format("malformed url '{}'", url);
    if (retrieval_rank < 0) return std::string("negative retrieval_rank");
    if (publication_date)
        if (auto e = publication_date->validate()) return "publication_date: " + *e;
    return std::nullopt;
}

std::optional<std::string> SplitSpec::validate() const {
    for (const auto* d : {&train_end, &val_end, &test_end}) {
        if (auto e = d->validate()) return e;
        if (!d->has_day()) return std::string("split end dates need day granularity");
    }
    if (!(days_since_epoch(train_end) < days_since_epoch(val_end) &&
          days_since_epoch(val_end) < days_since_epoch(test_end)))
        return std::string("split end dates must be strictly increasing");
    return std::nullopt;
}

std::string url_hostname(std::string_view url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) return {};
    auto scheme = strings::lower(url.substr(0, scheme_end));
    if (scheme != "http" && scheme != "https") return {};
    auto rest = url.substr(scheme_end + 3);
    auto host_end = rest.find_first_of("/?#");
    auto authority = rest.substr(0, host_end);
    if (auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);
    if (auto colon = authority.rfind(':'); colon != std::string_view::npos) authority = authority.substr(0, colon);
    for (char c : authority) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '-' || c == '.' || c == '_')) return {};
    }
    return strings::lower(authority);
}

bool is_well_formed_url(std::string_view url) {
    if (url.find_first_of(" \t\r\n") != std::string_view::npos) return false;
    return !url_hostname(url).empty();
}

bool is_sentinel(std::string_view text) {
    return strings::join(strings::normalize_tokens(text), " ") == "not enough information";
}

bool is_abstention(std::string_view text) {
    auto norm = strings::join(strings::normalize_tokens(text), " ");
    if (norm.empty()) return true;
    if (norm == "unknown" || norm == "n a" || norm == "none") return true;
    for (std::string_view phrase : {"not enough information", "cannot determine", "cannot be determined",
                                    "can not determine", "cannot be identified"})
        if (norm.find(phrase) != std::string::npos) return true;
    return false;
}

}  // namespace pillars
