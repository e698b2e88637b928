#include "pillars/builder/annotate.hpp"

#include <stdexcept>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/date_text.hpp"
#include "pillars/core/resources.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::builder {

namespace {

std::optional<std::string> scalar_text(const Json& v) {
    std::string s;
    if (v.is_string()) s = v.get<std::string>();
    else if (v.is_number() || v.is_boolean()) s = v.dump();
    else return std::nullopt;
    s = strings::collapse_whitespace(s);
    if (s.empty() || is_sentinel(s)) return std::nullopt;
    return s;
}

std::vector<std::string> items(const Json& j, const char* key) {
    std::vector<std::string> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    if (it->is_array()) {
        for (const auto& v : *it)
            if (auto s = scalar_text(v)) out.push_back(*s);
    } else if (auto s = scalar_text(*it)) {
        out.push_back(*s);
    }
    return out;
}

std::optional<std::string> joined(const Json& j, const char* key) {
    auto v = items(j, key);
    if (v.empty()) return std::nullopt;
    return strings::join(v, ", ");
}

std::vector<DateValue> dates(const Json& j, const char* key) {
    std::vector<DateValue> out;
    for (const auto& s : items(j, key))
        for (auto& d : normalize_date_text(s))
            if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    return out;
}

std::optional<ImageType> image_type(const Json& j) {
    auto s = joined(j, "image_type");
    if (!s) return std::nullopt;
    auto key = strings::lower(*s);
    for (char& c : key)
        if (c == '-' || c == ' ') c = '_';
    if (key == "true") key = "true_image";
    return parse_image_type(key);
}

std::string fill(std::string tmpl, std::string_view name, std::string_view value) {
    const std::string token = "{" + std::string(name) + "}";
    for (auto pos = tmpl.find(token); pos != std::string::npos; pos = tmpl.find(token, pos + value.size()))
        tmpl.replace(pos, token.size(), value);
    return tmpl;
}

std::string resource_text(const char* name) {
    auto path = resource_dir() / name;
    auto text = read_file(path);
    if (!text) throw std::runtime_error("cannot read " + path.string());
    return *text;
}

}  // namespace

Annotation annotation_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("annotation is not a JSON object");
    Annotation a;
    if (auto p = joined(j, "provenance"))
        if (auto v = parse_provenance(*p)) a.answers.provenance = *v;
    a.answers.source = joined(j, "source");
    a.answers.date = dates(j, "date");
    for (const auto& s : items(j, "location")) a.answers.location.push_back(LocationValue{s, std::nullopt, std::nullopt});
    a.answers.motivation = joined(j, "motivation");

    if (auto d = dates(j, "claimed_date"); !d.empty()) a.claimed.claimed_date = d.front();
    a.claimed.claimed_location = joined(j, "claimed_location");
    a.claimed.claimant = joined(j, "claimant");
    a.claimed.claimant_motivation = joined(j, "claimant_motivation");
    a.image_type = image_type(j);
    return a;
}

std::optional<Json> parse_json_reply(std::string_view reply) {
    auto whole = Json::parse(reply, nullptr, false);
    if (!whole.is_discarded() && whole.is_object()) return whole;
    // Scan for a balanced object, skipping braces inside strings.
    for (auto start = reply.find('{'); start != std::string_view::npos; start = reply.find('{', start + 1)) {
        int depth = 0;
        bool in_string = false;
        for (std::size_t i = start; i < reply.size(); ++i) {
            const char c = reply[i];
            if (in_string) {
                if (c == '\\') ++i;
                else if (c == '"') in_string = false;
            } else if (c == '"') {
                in_string = true;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}' && --depth == 0) {
                auto j = Json::parse(reply.substr(start, i - start + 1), nullptr, false);
                if (!j.is_discarded() && j.is_object()) return j;
                break;
            }
        }
    }
    return std::nullopt;
}

AnnotationPrompts AnnotationPrompts::shipped() {
    return {resource_text("annotation_prompt.txt"), resource_text("annotation_repair.txt")};
}

std::string render_annotation_prompt(const AnnotationPrompts& prompts, const FcArticle& article) {
    auto s = fill(prompts.instruction, "title", article.title.value_or(std::string(kNotEnoughInformation)));
    s = fill(std::move(s), "date",
             article.publication_date ? article.publication_date->human() : std::string(kNotEnoughInformation));
    return fill(std::move(s), "text", article.body_text);
}

AnnotationOutcome extract_annotations(const FcArticle& article, backends::ChatBackend& chat,
                                      const AnnotationPrompts& prompts) {
    AnnotationOutcome out;
    backends::ChatRequest req;
    req.temperature = 0.0;
    req.max_tokens = prompts.max_tokens;
    req.messages.push_back({"user", render_annotation_prompt(prompts, article), {}});
    for (int attempt = 0; attempt < 2; ++attempt) {
        ++out.attempts;
        backends::ChatResponse res;
        try {
            res = chat.chat(req);
        } catch (const std::exception& e) {
            out.error = e.what();
            return out;
        }
        if (res.refused) {
            out.error = "annotator refused";
            return out;
        }
        if (auto j = parse_json_reply(res.text)) {
            out.annotation = annotation_from_json(*j);
            out.error.clear();
            return out;
        }
        out.error = "reply is not JSON";
        req.messages.push_back({"assistant", res.text, {}});
        req.messages.push_back({"user", fill(prompts.repair, "title", article.title.value_or("")), {}});
    }
    return out;
}

}  // namespace pillars::builder
