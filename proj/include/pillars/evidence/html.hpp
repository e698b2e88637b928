#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pillars::evidence::html {

/// Minimal tolerant DOM. Text nodes have an empty tag.
struct Node {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::string text;
    std::vector<std::unique_ptr<Node>> children;
    Node* parent = nullptr;

    bool is_text() const { return tag.empty(); }
    /// Attribute value or empty string; names compare lowercase.
    std::string_view attr(std::string_view name) const;
    bool has_attr(std::string_view name) const;
    /// Concatenated descendant text with whitespace collapsed.
    std::string inner_text() const;
};

/// Parses any input without throwing. Unknown or unbalanced markup is
/// recovered from the way browsers would in the common cases (implicit
/// paragraph closing, void elements, raw-text script/style).
std::unique_ptr<Node> parse(std::string_view html);

/// Decodes named and numeric character references.
std::string decode_entities(std::string_view s);

/// Depth-first visit; returning false from `fn` skips the node's subtree.
template <class F>
void walk(const Node& n, F&& fn) {
    if (!fn(n)) return;
    for (const auto& c : n.children) walk(*c, fn);
}

std::vector<const Node*> find_all(const Node& root, std::string_view tag);
const Node* find_first(const Node& root, std::string_view tag);

}  // namespace pillars::evidence::html
