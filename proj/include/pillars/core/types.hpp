#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pillars/core/date.hpp"

namespace pillars {

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct LocationValue {
    std::string text;
    std::optional<GeoPoint> coords;
    std::optional<std::string> gazetteer_id;

    std::optional<std::string> validate() const;
    friend bool operator==(const LocationValue&, const LocationValue&) = default;
};

enum class Provenance { yes, no, unknown };

/// The four free-form pillars answered by generation. Provenance is derived
/// from retrieval and handled separately.
enum class Pillar { source, date, location, motivation };

inline constexpr Pillar kGeneratedPillars[] = {Pillar::source, Pillar::date, Pillar::location, Pillar::motivation};

struct PillarAnswers {
    Provenance provenance = Provenance::unknown;
    std::optional<std::string> source;
    std::vector<DateValue> date;
    std::vector<LocationValue> location;
    std::optional<std::string> motivation;

    bool present(Pillar p) const;
    bool all_absent() const;
    std::optional<std::string> validate() const;
    friend bool operator==(const PillarAnswers&, const PillarAnswers&) = default;
};

enum class ImageType { out_of_context, manipulated, fake, true_image, other };

enum class VerificationStrategy { reverse_image_search, keyword_search, geolocation, other };

enum class Split { train, val, test };

struct ClaimedContext {
    std::optional<DateValue> claimed_date;
    std::optional<std::string> claimed_location;
    std::optional<std::string> claimant;
    std::optional<std::string> claimant_motivation;
    friend bool operator==(const ClaimedContext&, const ClaimedContext&) = default;
};

struct ImageCase {
    std::string id;
    std::string image_ref;
    std::string fc_article_url;
    DateValue fc_publication_date;
    ClaimedContext claimed;
    PillarAnswers gold;
    ImageType image_type = ImageType::other;
    std::set<VerificationStrategy> verification_strategies;
    Split split = Split::test;
    /// Unaltered version of a manipulated image, when the fact-check names one.
    std::optional<std::string> original_image_ref;

    std::optional<std::string> validate() const;
    friend bool operator==(const ImageCase&, const ImageCase&) = default;
};

enum class ScrapeStatus { ok, fetch_error, extract_error, blocked };

struct EvidenceItem {
    std::string url;
    std::string hostname;
    std::optional<std::string> title;
    std::optional<std::string> description;
    std::optional<std::string> author;
    std::optional<std::string> sitename;
    std::optional<DateValue> publication_date;
    std::string body_text;
    std::vector<std::string> image_captions;
    std::vector<std::string> image_urls;
    int retrieval_rank = 0;
    ScrapeStatus scrape_status = ScrapeStatus::ok;

    /// Stable identifier used in rankings and results.
    const std::string& id() const { return url; }
    std::optional<std::string> validate() const;
    friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;
};

struct SplitSpec {
    DateValue train_end = DateValue::ymd(2022, 5, 31);
    DateValue val_end = DateValue::ymd(2022, 9, 20);
    DateValue test_end = DateValue::ymd(2023, 12, 28);

    std::optional<std::string> validate() const;
};

// Enum names used in every serialized form.
std::string_view to_string(Provenance v);
std::string_view to_string(Pillar v);
std::string_view to_string(ImageType v);
std::string_view to_string(VerificationStrategy v);
std::string_view to_string(Split v);
std::string_view to_string(ScrapeStatus v);

std::optional<Provenance> parse_provenance(std::string_view s);
std::optional<Pillar> parse_pillar(std::string_view s);
std::optional<ImageType> parse_image_type(std::string_view s);
std::optional<VerificationStrategy> parse_strategy(std::string_view s);
std::optional<Split> parse_split(std::string_view s);
std::optional<ScrapeStatus> parse_scrape_status(std::string_view s);

/// Well-formed absolute http(s) URL with a non-empty host.
bool is_well_formed_url(std::string_view url);
/// Lowercased host of an http(s) URL, without port; empty when malformed.
std::string url_hostname(std::string_view url);

/// Sentinel used by annotators and models when no answer is available.
inline constexpr std::string_view kNotEnoughInformation = "Not enough information";

/// True for the annotation sentinel itself (case and punctuation insensitive).
bool is_sentinel(std::string_view text);
/// True for the sentinel and the other abstention phrases models produce.
bool is_abstention(std::string_view text);

}  // namespace pillars
