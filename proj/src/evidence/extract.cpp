#include "pillars/evidence/extract.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include <json.hpp>

#include "pillars/core/date_text.hpp"
#include "pillars/core/strings.hpp"
#include "pillars/evidence/html.hpp"

namespace pillars::evidence {

namespace {

using html::Node;

constexpr std::array kSkipTags = {"nav", "header", "footer", "aside", "form", "script", "style", "noscript",
                                  "template", "button", "select", "iframe", "svg"};
constexpr std::array kBoilerplateHints = {"nav", "menu", "footer", "sidebar", "comment", "share", "social",
                                          "related", "advert", "promo", "cookie", "subscribe", "newsletter", "breadcrumb"};
constexpr std::array kBlockTags = {"p", "h1", "h2", "h3", "h4", "h5", "h6", "li", "blockquote", "pre", "td", "dd", "dt"};

template <std::size_t N>
bool in(const std::array<const char*, N>& set, std::string_view s) {
    return std::any_of(set.begin(), set.end(), [&](const char* x) { return s == x; });
}

bool looks_like_boilerplate(const Node& n) {
    if (in(kSkipTags, n.tag)) return true;
    const auto cls = strings::lower(std::string(n.attr("class")) + " " + std::string(n.attr("id")) + " " +
                                    std::string(n.attr("role")));
    if (cls.find("navigation") != std::string::npos || cls.find("contentinfo") != std::string::npos) return true;
    for (auto token : strings::split(cls, " \t\n-_")) {
        for (const char* hint : kBoilerplateHints)
            if (token == hint) return true;
    }
    return false;
}

std::optional<std::string> non_empty(std::string s) {
    s = strings::collapse_whitespace(s);
    if (s.empty()) return std::nullopt;
    return s;
}

std::optional<std::string> meta(const Node& root, std::initializer_list<std::string_view> keys) {
    for (auto key : keys) {
        std::optional<std::string> found;
        html::walk(root, [&](const Node& n) {
            if (found) return false;
            if (n.tag == "meta") {
                for (auto attr : {"property", "name", "itemprop"})
                    if (strings::iequals(n.attr(attr), key)) {
                        if (auto v = non_empty(std::string(n.attr("content")))) found = v;
                    }
            }
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;
}

std::optional<DateValue> parse_date_value(std::string_view s) {
    auto dates = normalize_date_text(s);
    if (dates.empty()) return std::nullopt;
    return dates.front();
}

// JSON-LD may be an object, an array, or an object with @graph.
void collect_ld(const nlohmann::json& j, std::vector<const nlohmann::json*>& out) {
    if (j.is_array()) {
        for (const auto& x : j) collect_ld(x, out);
    } else if (j.is_object()) {
        out.push_back(&j);
        if (auto g = j.find("@graph"); g != j.end()) collect_ld(*g, out);
    }
}

std::optional<std::string> ld_name(const nlohmann::json& v) {
    if (v.is_string()) return non_empty(v.get<std::string>());
    if (v.is_object() && v.contains("name") && v["name"].is_string()) return non_empty(v["name"].get<std::string>());
    if (v.is_array() && !v.empty()) return ld_name(v.front());
    return std::nullopt;
}

struct LdFields {
    std::optional<std::string> date, author, publisher, headline;
};

LdFields json_ld(const Node& root) {
    LdFields f;
    for (const Node* s : html::find_all(root, "script")) {
        if (!strings::icontains(s->attr("type"), "ld+json") || s->children.empty()) continue;
        auto j = nlohmann::json::parse(s->children.front()->text, nullptr, false);
        if (j.is_discarded()) continue;
        std::vector<const nlohmann::json*> objs;
        collect_ld(j, objs);
        for (const auto* o : objs) {
            if (!f.date)
                for (auto key : {"datePublished", "dateCreated", "uploadDate"})
                    if (o->contains(key) && (*o)[key].is_string()) {
                        f.date = (*o)[key].get<std::string>();
                        break;
                    }
            if (!f.author && o->contains("author")) f.author = ld_name((*o)["author"]);
            if (!f.publisher && o->contains("publisher")) f.publisher = ld_name((*o)["publisher"]);
            if (!f.headline && o->contains("headline") && (*o)["headline"].is_string())
                f.headline = non_empty((*o)["headline"].get<std::string>());
        }
    }
    return f;
}

std::size_t text_length(const Node& n) {
    std::size_t len = 0;
    html::walk(n, [&](const Node& c) {
        if (c.is_text()) len += strings::collapse_whitespace(c.text).size();
        return !looks_like_boilerplate(c);
    });
    return len;
}

const Node* content_root(const Node& doc) {
    const Node* best = nullptr;
    std::size_t best_len = 0;
    for (const char* tag : {"article", "main"}) {
        for (const Node* n : html::find_all(doc, tag)) {
            auto len = text_length(*n);
            if (len > best_len) {
                best = n;
                best_len = len;
            }
        }
        if (best) return best;
    }
    if (auto body = html::find_first(doc, "body")) return body;
    return &doc;
}

double link_density(const Node& n, std::size_t total) {
    if (total == 0) return 0.0;
    std::size_t linked = 0;
    html::walk(n, [&](const Node& c) {
        if (c.tag == "a") {
            linked += c.inner_text().size();
            return false;
        }
        return true;
    });
    return double(linked) / double(total);
}

std::vector<std::string> text_blocks(const Node& root) {
    std::vector<std::string> blocks;
    std::string loose;
    auto flush_loose = [&] {
        if (auto t = non_empty(loose)) blocks.push_back(*t);
        loose.clear();
    };
    std::function<void(const Node&)> visit = [&](const Node& n) {
        if (n.is_text()) {
            loose += n.text;
            return;
        }
        if (looks_like_boilerplate(n) || n.tag == "figcaption" || n.tag == "title") return;
        if (in(kBlockTags, n.tag)) {
            flush_loose();
            auto t = n.inner_text();
            if (t.empty()) return;
            const auto words = strings::count_tokens(t);
            if (link_density(n, t.size()) > 0.5 && words < 25) return;
            blocks.push_back(std::move(t));
            return;
        }
        const bool breaks = n.tag == "div" || n.tag == "section" || n.tag == "br" || n.tag == "article" ||
                            n.tag == "main" || n.tag == "ul" || n.tag == "ol" || n.tag == "table" || n.tag == "tr";
        if (breaks) flush_loose();
        for (const auto& c : n.children) visit(*c);
        if (breaks) flush_loose();
    };
    visit(root);
    flush_loose();
    return blocks;
}

void add_unique(std::vector<std::string>& v, std::string s) {
    if (!s.empty() && std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

}  // namespace

std::string resolve_url(std::string_view base, std::string_view ref) {
    auto r = std::string(strings::trim(ref));
    if (r.empty() || strings::starts_with_ci(r, "data:") || strings::starts_with_ci(r, "javascript:")) return {};
    if (strings::starts_with_ci(r, "http://") || strings::starts_with_ci(r, "https://")) return r;
    const auto scheme_end = base.find("://");
    if (scheme_end == std::string_view::npos) return r;
    const auto scheme = base.substr(0, scheme_end);
    if (r.starts_with("//")) return std::string(scheme) + ":" + r;
    const auto path_start = base.find('/', scheme_end + 3);
    const auto origin = base.substr(0, path_start == std::string_view::npos ? base.size() : path_start);
    if (r.starts_with("/")) return std::string(origin) + r;
    auto path = path_start == std::string_view::npos ? std::string_view("/") : base.substr(path_start);
    path = path.substr(0, std::min(path.find('?'), path.find('#')));
    const auto dir = path.substr(0, path.rfind('/') + 1);
    return std::string(origin) + std::string(dir) + r;
}

std::optional<ExtractedPage> extract_page(std::string_view raw, std::string_view page_url) {
    if (raw.find('<') == std::string_view::npos) return std::nullopt;
    if (std::count(raw.begin(), raw.end(), '\0') > 0) return std::nullopt;
    auto doc = html::parse(raw);
    ExtractedPage p;
    const auto ld = json_ld(*doc);

    p.title = meta(*doc, {"og:title", "twitter:title"});
    if (!p.title)
        if (auto t = html::find_first(*doc, "title")) p.title = non_empty(t->inner_text());
    if (!p.title) p.title = ld.headline;
    for (const char* h : {"h1", "h2", "h3"})
        if (!p.title)
            if (auto n = html::find_first(*doc, h)) p.title = non_empty(n->inner_text());

    p.description = meta(*doc, {"description", "og:description", "twitter:description"});
    p.author = meta(*doc, {"author", "article:author", "byl", "dc.creator"});
    if (!p.author) p.author = ld.author;
    p.sitename = meta(*doc, {"og:site_name", "application-name"});
    if (!p.sitename) p.sitename = ld.publisher;

    std::optional<std::string> date = meta(*doc, {"article:published_time", "og:published_time", "datePublished",
                                                  "date", "pubdate", "publish-date", "dc.date", "dc.date.issued",
                                                  "sailthru.date", "parsely-pub-date"});
    if (!date) date = ld.date;
    const Node* root = content_root(*doc);
    if (!date)
        if (auto t = html::find_first(*root, "time")) {
            auto dt = std::string(t->attr("datetime"));
            date = dt.empty() ? non_empty(t->inner_text()) : dt;
        }
    if (date) p.publication_date = parse_date_value(*date);

    auto blocks = text_blocks(*root);
    // The headline usually opens the article; it is already in `title`.
    if (!blocks.empty() && p.title &&
        strings::iequals(strings::collapse_whitespace(blocks.front()), strings::collapse_whitespace(*p.title)))
        blocks.erase(blocks.begin());
    p.body_text = strings::join(blocks, "\n");

    if (auto og = meta(*doc, {"og:image", "twitter:image"})) add_unique(p.image_urls, resolve_url(page_url, *og));
    std::vector<std::string> alts;
    html::walk(*root, [&](const Node& n) {
        if (n.tag != "img") return !looks_like_boilerplate(n);
        auto src = n.attr("src");
        if (src.empty()) src = n.attr("data-src");
        add_unique(p.image_urls, resolve_url(page_url, src));
        if (auto alt = non_empty(std::string(n.attr("alt")))) alts.push_back(*alt);
        return false;
    });
    for (const Node* fc : html::find_all(*doc, "figcaption"))
        if (auto t = non_empty(fc->inner_text())) add_unique(p.image_captions, *t);
    if (p.image_captions.empty())
        for (auto& a : alts) add_unique(p.image_captions, a);

    if (!p.title && p.body_text.empty()) return std::nullopt;
    return p;
}

}  // namespace pillars::evidence
