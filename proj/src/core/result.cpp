#include "pillars/core/result.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace pillars {

namespace {

Json pillar_map(const std::map<Pillar, std::string>& m) {
    Json j = Json::object();
    for (auto p : kGeneratedPillars)
        if (auto it = m.find(p); it != m.end()) j[std::string(to_string(p))] = it->second;
    return j;
}

std::map<Pillar, std::string> pillar_map_from(const Json& j, const char* key) {
    std::map<Pillar, std::string> out;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return out;
    if (!it->is_object()) throw std::invalid_argument(fmt::format("{}: expected object", key));
    for (const auto& [k, v] : it->items()) {
        auto p = parse_pillar(k);
        if (!p || !v.is_string()) throw std::invalid_argument(fmt::format("{}.{}: invalid entry", key, k));
        out[*p] = v.get<std::string>();
    }
    return out;
}

Json events(const std::vector<StageEvent>& v) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(Json{{"stage", e.stage}, {"detail", e.detail}});
    return a;
}

std::vector<StageEvent> events_from(const Json& j, const char* key) {
    std::vector<StageEvent> out;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return out;
    if (!it->is_array()) throw std::invalid_argument(fmt::format("{}: expected array", key));
    for (const auto& e : *it) out.push_back({e.value("stage", std::string()), e.value("detail", std::string())});
    return out;
}

std::vector<std::string> strings_from(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_array()) throw std::invalid_argument(fmt::format("{}: expected array", key));
    return it->get<std::vector<std::string>>();
}

}  // namespace

bool CaseResult::has_error(std::string_view stage) const {
    for (const auto& e : errors)
        if (e.stage == stage) return true;
    return false;
}

Json to_json(const CaseResult& r) {
    Json j;
    j["case_id"] = r.case_id;
    j["predicted"] = to_json(r.predicted);
    j["raw_answers"] = pillar_map(r.raw_answers);
    j["evidence_used"] = r.evidence_used;
    j["demonstrations_used"] = r.demonstrations_used;
    j["prompt_image"] = r.prompt_image ? Json(*r.prompt_image) : Json(nullptr);
    j["prompts"] = pillar_map(r.prompts);
    j["errors"] = events(r.errors);
    j["trace"] = events(r.trace);
    return j;
}

CaseResult result_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("result is not a JSON object");
    CaseResult r;
    auto id = j.find("case_id");
    if (id == j.end() || !id->is_string()) throw std::invalid_argument("case_id: missing or not a string");
    r.case_id = id->get<std::string>();
    if (auto p = j.find("predicted"); p != j.end()) r.predicted = answers_from_json(*p);
    r.raw_answers = pillar_map_from(j, "raw_answers");
    r.evidence_used = strings_from(j, "evidence_used");
    r.demonstrations_used = strings_from(j, "demonstrations_used");
    if (auto p = j.find("prompt_image"); p != j.end() && p->is_string()) r.prompt_image = p->get<std::string>();
    r.prompts = pillar_map_from(j, "prompts");
    r.errors = events_from(j, "errors");
    r.trace = events_from(j, "trace");
    return r;
}

}  // namespace pillars
