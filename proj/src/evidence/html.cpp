#include "pillars/evidence/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "pillars/core/strings.hpp"

namespace pillars::evidence::html {

namespace {

constexpr std::array kVoid = {"area", "base", "br", "col", "embed", "hr", "img", "input",
                              "link", "meta", "param", "source", "track", "wbr"};
constexpr std::array kRawText = {"script", "style", "noscript", "template", "textarea", "title"};
// Opening one of these closes an open <p>.
constexpr std::array kClosesP = {"address", "article", "aside", "blockquote", "div", "dl", "fieldset", "figure",
                                 "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr",
                                 "main", "nav", "ol", "p", "pre", "section", "table", "ul"};

template <std::size_t N>
bool in(const std::array<const char*, N>& set, std::string_view s) {
    return std::any_of(set.begin(), set.end(), [&](const char* x) { return s == x; });
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp < 0x80) {
        out += char(cp);
    } else if (cp < 0x800) {
        out += char(0xC0 | (cp >> 6));
        out += char(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += char(0xE0 | (cp >> 12));
        out += char(0x80 | ((cp >> 6) & 0x3F));
        out += char(0x80 | (cp & 0x3F));
    } else {
        out += char(0xF0 | (cp >> 18));
        out += char(0x80 | ((cp >> 12) & 0x3F));
        out += char(0x80 | ((cp >> 6) & 0x3F));
        out += char(0x80 | (cp & 0x3F));
    }
}

struct Named {
    const char* name;
    unsigned long cp;
};
constexpr Named kNamed[] = {
    {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},     {"apos", '\''},
    {"nbsp", 0xA0},    {"ndash", 0x2013}, {"mdash", 0x2014}, {"lsquo", 0x2018}, {"rsquo", 0x2019},
    {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"hellip", 0x2026}, {"copy", 0xA9},   {"reg", 0xAE},
    {"eacute", 0xE9},  {"egrave", 0xE8},  {"aacute", 0xE1},  {"oacute", 0xF3},  {"uuml", 0xFC},
    {"ouml", 0xF6},    {"auml", 0xE4},    {"ccedil", 0xE7},  {"ntilde", 0xF1},  {"middot", 0xB7},
};

struct Builder {
    std::unique_ptr<Node> root = std::make_unique<Node>();
    Node* cur = nullptr;

    Builder() {
        root->tag = "#document";
        cur = root.get();
    }

    void text(std::string_view raw) {
        if (raw.empty()) return;
        auto t = std::make_unique<Node>();
        t->text = decode_entities(raw);
        t->parent = cur;
        cur->children.push_back(std::move(t));
    }

    bool open_in_scope(std::string_view tag) const {
        for (Node* n = cur; n && n != root.get(); n = n->parent)
            if (n->tag == tag) return true;
        return false;
    }

    void close(std::string_view tag) {
        if (!open_in_scope(tag)) return;
        while (cur != root.get()) {
            bool match = cur->tag == tag;
            cur = cur->parent;
            if (match) break;
        }
    }

    Node* open(std::string tag, std::vector<std::pair<std::string, std::string>> attrs, bool self_closing) {
        if (in(kClosesP, tag) && open_in_scope("p")) close("p");
        if (tag == "li" && cur->tag == "li") close("li");
        auto n = std::make_unique<Node>();
        n->tag = std::move(tag);
        n->attrs = std::move(attrs);
        n->parent = cur;
        Node* raw = n.get();
        cur->children.push_back(std::move(n));
        if (!self_closing && !in(kVoid, raw->tag)) cur = raw;
        return raw;
    }
};

std::string lower_ascii(std::string_view s) { return strings::lower(s); }

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.';
}

}  // namespace

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out += s[i];
            continue;
        }
        auto semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out += '&';
            continue;
        }
        auto body = s.substr(i + 1, semi - i - 1);
        bool done = false;
        if (!body.empty() && body[0] == '#') {
            unsigned long cp = 0;
            bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
            auto digits = body.substr(hex ? 2 : 1);
            if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [&](char c) {
                    return hex ? std::isxdigit(static_cast<unsigned char>(c)) : std::isdigit(static_cast<unsigned char>(c));
                })) {
                cp = std::stoul(std::string(digits), nullptr, hex ? 16 : 10);
                append_utf8(out, cp);
                done = true;
            }
        } else {
            for (const auto& n : kNamed)
                if (body == n.name) {
                    append_utf8(out, n.cp);
                    done = true;
                    break;
                }
        }
        if (done)
            i = semi;
        else
            out += '&';
    }
    return out;
}

std::string_view Node::attr(std::string_view name) const {
    for (const auto& [k, v] : attrs)
        if (k == name) return v;
    return {};
}

bool Node::has_attr(std::string_view name) const {
    return std::any_of(attrs.begin(), attrs.end(), [&](const auto& kv) { return kv.first == name; });
}

std::string Node::inner_text() const {
    std::string raw;
    walk(*this, [&](const Node& n) {
        if (n.is_text()) {
            raw += n.text;
        } else if (n.tag == "br" || n.tag == "p" || n.tag == "li" || n.tag == "div") {
            raw += ' ';
        }
        return n.tag != "script" && n.tag != "style";
    });
    return strings::collapse_whitespace(raw);
}

std::unique_ptr<Node> parse(std::string_view s) {
    Builder b;
    std::size_t i = 0, text_start = 0;
    auto flush = [&](std::size_t end) {
        if (end > text_start) b.text(s.substr(text_start, end - text_start));
    };
    while (i < s.size()) {
        if (s[i] != '<') {
            ++i;
            continue;
        }
        if (s.compare(i, 4, "<!--") == 0) {
            flush(i);
            auto end = s.find("-->", i + 4);
            i = end == std::string_view::npos ? s.size() : end + 3;
            text_start = i;
            continue;
        }
        if (i + 1 < s.size() && (s[i + 1] == '!' || s[i + 1] == '?')) {
            flush(i);
            auto end = s.find('>', i);
            i = end == std::string_view::npos ? s.size() : end + 1;
            text_start = i;
            continue;
        }
        const bool closing = i + 1 < s.size() && s[i + 1] == '/';
        std::size_t j = i + (closing ? 2 : 1);
        if (j >= s.size() || !std::isalpha(static_cast<unsigned char>(s[j]))) {
            ++i;  // a stray '<' is text
            continue;
        }
        flush(i);
        std::size_t name_start = j;
        while (j < s.size() && is_name_char(s[j])) ++j;
        std::string tag = lower_ascii(s.substr(name_start, j - name_start));
        std::vector<std::pair<std::string, std::string>> attrs;
        bool self_closing = false;
        while (j < s.size() && s[j] != '>') {
            if (std::isspace(static_cast<unsigned char>(s[j]))) {
                ++j;
                continue;
            }
            if (s[j] == '/') {
                self_closing = true;
                ++j;
                continue;
            }
            std::size_t an = j;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '=' && s[j] != '>' &&
                   s[j] != '/')
                ++j;
            std::string name = lower_ascii(s.substr(an, j - an));
            if (name.empty()) {
                ++j;
                continue;
            }
            self_closing = false;
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            std::string value;
            if (j < s.size() && s[j] == '=') {
                ++j;
                while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
                if (j < s.size() && (s[j] == '"' || s[j] == '\'')) {
                    char q = s[j++];
                    auto end = s.find(q, j);
                    if (end == std::string_view::npos) end = s.size();
                    value = decode_entities(s.substr(j, end - j));
                    j = end + 1;
                } else {
                    std::size_t vs = j;
                    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '>') ++j;
                    value = decode_entities(s.substr(vs, j - vs));
                }
            }
            attrs.emplace_back(std::move(name), std::move(value));
        }
        i = j < s.size() ? j + 1 : s.size();
        text_start = i;
        if (closing) {
            b.close(tag);
            continue;
        }
        Node* n = b.open(tag, std::move(attrs), self_closing);
        if (in(kRawText, tag) && !self_closing) {
            // Raw text runs to the matching close tag, case-insensitively.
            std::size_t k = i;
            std::size_t end = s.size();
            while (k < s.size()) {
                auto lt = s.find("</", k);
                if (lt == std::string_view::npos) break;
                if (strings::iequals(s.substr(lt + 2, tag.size()), tag)) {
                    end = lt;
                    break;
                }
                k = lt + 2;
            }
            auto content = s.substr(i, end - i);
            if (!content.empty()) {
                auto t = std::make_unique<Node>();
                t->text = (tag == "title" || tag == "textarea") ? decode_entities(content) : std::string(content);
                t->parent = n;
                n->children.push_back(std::move(t));
            }
            b.close(tag);
            auto gt = s.find('>', end);
            i = (end == s.size() || gt == std::string_view::npos) ? s.size() : gt + 1;
            text_start = i;
        }
    }
    flush(s.size());
    return std::move(b.root);
}

std::vector<const Node*> find_all(const Node& root, std::string_view tag) {
    std::vector<const Node*> out;
    walk(root, [&](const Node& n) {
        if (n.tag == tag) out.push_back(&n);
        return true;
    });
    return out;
}

const Node* find_first(const Node& root, std::string_view tag) {
    const Node* found = nullptr;
    walk(root, [&](const Node& n) {
        if (found) return false;
        if (n.tag == tag) {
            found = &n;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace pillars::evidence::html
