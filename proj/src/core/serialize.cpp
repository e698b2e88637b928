#include "pillars/core/serialize.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "pillars/core/strings.hpp"

namespace pillars {

namespace {

[[noreturn]] void schema_error(std::string_view field, std::string_view what) {
    throw std::invalid_argument(fmt::format("{}: {}", field, what));
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object()) schema_error(key, "parent is not an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(key, "missing");
    return *it;
}

std::string require_string(const Json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_string()) schema_error(key, "expected string");
    return v.get<std::string>();
}

/// Null, missing and the sentinel all read as absent.
std::optional<std::string> optional_string(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) schema_error(key, "expected string or null");
    auto s = std::string(strings::trim(it->get<std::string>()));
    if (s.empty() || is_sentinel(s)) return std::nullopt;
    return s;
}

std::optional<int> optional_int(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_integer()) schema_error(key, "expected integer or null");
    return it->get<int>();
}

Json nullable(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

template <class T, class F>
std::vector<T> array_of(const Json& j, const char* key, F&& parse) {
    std::vector<T> out;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return out;
    if (!it->is_array()) schema_error(key, "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
        try {
            out.push_back(parse((*it)[i]));
        } catch (const std::invalid_argument& e) {
            schema_error(fmt::format("{}[{}]", key, i), e.what());
        }
    }
    return out;
}

std::vector<std::string> string_array(const Json& j, const char* key) {
    return array_of<std::string>(j, key, [](const Json& v) {
        if (!v.is_string()) throw std::invalid_argument("expected string");
        return v.get<std::string>();
    });
}

}  // namespace

Json to_json(const DateValue& d) {
    Json j;
    j["year"] = d.year;
    j["month"] = d.month ? Json(*d.month) : Json(nullptr);
    j["day"] = d.day ? Json(*d.day) : Json(nullptr);
    return j;
}

DateValue date_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("date: expected object");
    const auto& y = require(j, "year");
    if (!y.is_number_integer()) schema_error("year", "expected integer");
    return {y.get<int>(), optional_int(j, "month"), optional_int(j, "day")};
}

Json to_json(const LocationValue& l) {
    Json j;
    j["text"] = l.text;
    if (l.coords) {
        j["coords"] = Json{{"lat", l.coords->lat}, {"lon", l.coords->lon}};
    } else {
        j["coords"] = nullptr;
    }
    j["gazetteer_id"] = nullable(l.gazetteer_id);
    return j;
}

LocationValue location_from_json(const Json& j) {
    if (j.is_string()) return {j.get<std::string>(), std::nullopt, std::nullopt};
    LocationValue l;
    l.text = require_string(j, "text");
    if (auto it = j.find("coords"); it != j.end() && !it->is_null()) {
        const auto& lat = require(*it, "lat");
        const auto& lon = require(*it, "lon");
        if (!lat.is_number() || !lon.is_number()) schema_error("coords", "expected numbers");
        l.coords = GeoPoint{lat.get<double>(), lon.get<double>()};
    }
    if (auto it = j.find("gazetteer_id"); it != j.end() && !it->is_null()) {
        if (it->is_number_integer()) {
            l.gazetteer_id = std::to_string(it->get<long long>());
        } else if (it->is_string()) {
            l.gazetteer_id = it->get<std::string>();
        } else {
            schema_error("gazetteer_id", "expected string or integer");
        }
    }
    return l;
}

Json to_json(const PillarAnswers& a) {
    Json j;
    j["provenance"] = std::string(to_string(a.provenance));
    j["source"] = nullable(a.source);
    j["date"] = Json::array();
    for (const auto& d : a.date) j["date"].push_back(to_json(d));
    j["location"] = Json::array();
    for (const auto& l : a.location) j["location"].push_back(to_json(l));
    j["motivation"] = nullable(a.motivation);
    return j;
}

PillarAnswers answers_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("answers: expected object");
    PillarAnswers a;
    if (auto it = j.find("provenance"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) schema_error("provenance", "expected string");
        auto p = parse_provenance(it->get<std::string>());
        if (!p) schema_error("provenance", fmt::format("unknown value '{}'", it->get<std::string>()));
        a.provenance = *p;
    }
    a.source = optional_string(j, "source");
    a.date = array_of<DateValue>(j, "date", date_from_json);
    auto locations = array_of<LocationValue>(j, "location", location_from_json);
    for (auto& l : locations)
        if (!is_sentinel(l.text)) a.location.push_back(std::move(l));
    a.motivation = optional_string(j, "motivation");
    return a;
}

Json to_json(const ImageCase& c) {
    Json j;
    j["id"] = c.id;
    j["image_ref"] = c.image_ref;
    j["fc_article_url"] = c.fc_article_url;
    j["fc_publication_date"] = to_json(c.fc_publication_date);
    Json claimed;
    claimed["claimed_date"] = c.claimed.claimed_date ? to_json(*c.claimed.claimed_date) : Json(nullptr);
    claimed["claimed_location"] = nullable(c.claimed.claimed_location);
    claimed["claimant"] = nullable(c.claimed.claimant);
    claimed["claimant_motivation"] = nullable(c.claimed.claimant_motivation);
    j["claimed"] = claimed;
    j["gold"] = to_json(c.gold);
    j["image_type"] = std::string(to_string(c.image_type));
    j["verification_strategies"] = Json::array();
    for (auto s : c.verification_strategies) j["verification_strategies"].push_back(std::string(to_string(s)));
    j["split"] = std::string(to_string(c.split));
    j["original_image_ref"] = nullable(c.original_image_ref);
    return j;
}

ImageCase case_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
    ImageCase c;
    c.id = require_string(j, "id");
    c.image_ref = require_string(j, "image_ref");
    c.fc_article_url = require_string(j, "fc_article_url");
    try {
        c.fc_publication_date = date_from_json(require(j, "fc_publication_date"));
    } catch (const std::invalid_argument& e) {
        schema_error("fc_publication_date", e.what());
    }
    if (auto it = j.find("claimed"); it != j.end() && !it->is_null()) {
        if (auto d = it->find("claimed_date"); d != it->end() && !d->is_null()) {
            try {
                c.claimed.claimed_date = date_from_json(*d);
            } catch (const std::invalid_argument& e) {
                schema_error("claimed.claimed_date", e.what());
            }
        }
        c.claimed.claimed_location = optional_string(*it, "claimed_location");
        c.claimed.claimant = optional_string(*it, "claimant");
        c.claimed.claimant_motivation = optional_string(*it, "claimant_motivation");
    }
    try {
        c.gold = answers_from_json(require(j, "gold"));
    } catch (const std::invalid_argument& e) {
        schema_error("gold", e.what());
    }
    if (auto t = optional_string(j, "image_type")) {
        auto parsed = parse_image_type(*t);
        if (!parsed) schema_error("image_type", fmt::format("unknown value '{}'", *t));
        c.image_type = *parsed;
    }
    for (const auto& s : string_array(j, "verification_strategies")) {
        auto parsed = parse_strategy(s);
        if (!parsed) schema_error("verification_strategies", fmt::format("unknown value '{}'", s));
        c.verification_strategies.insert(*parsed);
    }
    if (auto s = optional_string(j, "split")) {
        auto parsed = parse_split(*s);
        if (!parsed) schema_error("split", fmt::format("unknown value '{}'", *s));
        c.split = *parsed;
    }
    c.original_image_ref = optional_string(j, "original_image_ref");
    return c;
}

Json to_json(const EvidenceItem& e) {
    Json j;
    j["url"] = e.url;
    j["hostname"] = e.hostname;
    j["title"] = nullable(e.title);
    j["description"] = nullable(e.description);
    j["author"] = nullable(e.author);
    j["sitename"] = nullable(e.sitename);
    j["publication_date"] = e.publication_date ? to_json(*e.publication_date) : Json(nullptr);
    j["body_text"] = e.body_text;
    j["image_captions"] = e.image_captions;
    j["image_urls"] = e.image_urls;
    j["retrieval_rank"] = e.retrieval_rank;
    j["scrape_status"] = std::string(to_string(e.scrape_status));
    return j;
}

EvidenceItem evidence_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("evidence is not a JSON object");
    EvidenceItem e;
    e.url = require_string(j, "url");
    e.hostname = j.value("hostname", url_hostname(e.url));
    auto raw = [&](const char* key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) schema_error(key, "expected string or null");
        return it->get<std::string>();
    };
    e.title = raw("title");
    e.description = raw("description");
    e.author = raw("author");
    e.sitename = raw("sitename");
    if (auto it = j.find("publication_date"); it != j.end() && !it->is_null()) e.publication_date = date_from_json(*it);
    e.body_text = j.value("body_text", std::string());
    e.image_captions = string_array(j, "image_captions");
    e.image_urls = string_array(j, "image_urls");
    e.retrieval_rank = j.value("retrieval_rank", 0);
    auto status = j.value("scrape_status", std::string("ok"));
    auto parsed = parse_scrape_status(status);
    if (!parsed) schema_error("scrape_status", fmt::format("unknown value '{}'", status));
    e.scrape_status = *parsed;
    return e;
}

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

}  // namespace pillars
