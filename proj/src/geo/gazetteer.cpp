#include "pillars/geo/gazetteer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "pillars/core/strings.hpp"

namespace pillars::geo {

namespace {

std::int64_t parse_id(std::string_view s, std::size_t line) {
    s = strings::trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw GazetteerError(fmt::format("line {}: invalid id '{}'", line, s));
    return v;
}

double parse_coord(std::string_view s, std::size_t line, double limit) {
    auto str = std::string(strings::trim(s));
    try {
        std::size_t used = 0;
        double v = std::stod(str, &used);
        if (used != str.size() || !(v >= -limit && v <= limit)) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw GazetteerError(fmt::format("line {}: invalid coordinate '{}'", line, str));
    }
}

}  // namespace

std::string normalize_place_name(std::string_view name) { return strings::lower(strings::collapse_whitespace(name)); }

int feature_rank(std::string_view fc) {
    auto f = strings::lower(strings::trim(fc));
    if (f == "continent" || f == "cont" || f == "world" || f == "earth") return 0;
    if (f == "country" || f.starts_with("pcl")) return 1;
    if (f == "region" || f == "state" || f == "province" || f.starts_with("adm")) return 2;
    if (f == "city" || f == "town" || f.starts_with("ppl")) return 3;
    return 4;
}

Gazetteer Gazetteer::ingest(const std::filesystem::path& dump) {
    std::ifstream in(dump, std::ios::binary);
    if (!in) throw GazetteerError(fmt::format("cannot read gazetteer dump '{}'", dump.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Gazetteer Gazetteer::parse(std::string_view text) {
    std::vector<GazetteerNode> nodes;
    std::vector<std::string> notes;
    std::unordered_map<std::int64_t, std::size_t> seen;
    std::size_t line_no = 0;
    for (const auto& raw : strings::split(text, "\n", false)) {
        ++line_no;
        auto line = std::string_view(raw);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (strings::trim(line).empty() || strings::trim(line).front() == '#') continue;
        auto cols = strings::split(line, "\t", false);
        if (cols.size() < 6)
            throw GazetteerError(fmt::format("line {}: expected at least 6 tab-separated columns, got {}", line_no,
                                             cols.size()));
        GazetteerNode n;
        n.id = parse_id(cols[0], line_no);
        n.name = std::string(strings::trim(cols[1]));
        if (n.name.empty()) throw GazetteerError(fmt::format("line {}: empty name", line_no));
        if (!strings::trim(cols[2]).empty()) n.parent_id = parse_id(cols[2], line_no);
        n.lat = parse_coord(cols[3], line_no, 90.0);
        n.lon = parse_coord(cols[4], line_no, 180.0);
        n.feature_class = std::string(strings::trim(cols[5]));
        if (cols.size() > 6)
            for (const auto& alt : strings::split(cols[6], ","))
                if (!strings::trim(alt).empty()) n.alternate_names.emplace_back(strings::trim(alt));

        if (auto it = seen.find(n.id); it != seen.end()) {
            auto& first = nodes[it->second];
            if (first.parent_id != n.parent_id)
                notes.push_back(fmt::format("line {}: id {} repeated with another parent; keeping the first", line_no,
                                            n.id));
            continue;
        }
        seen.emplace(n.id, nodes.size());
        nodes.push_back(std::move(n));
    }
    auto g = from_nodes(std::move(nodes));
    g.notes_ = std::move(notes);
    return g;
}

Gazetteer Gazetteer::from_nodes(std::vector<GazetteerNode> nodes) {
    Gazetteer g;
    g.nodes_ = std::move(nodes);
    g.index();
    return g;
}

void Gazetteer::index() {
    by_id_.clear();
    by_name_.clear();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!by_id_.emplace(nodes_[i].id, i).second)
            throw GazetteerError(fmt::format("duplicate id {}", nodes_[i].id));
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (n.parent_id && !by_id_.count(*n.parent_id))
            throw GazetteerError(fmt::format("node {} ({}) references unknown parent {}", n.id, n.name, *n.parent_id));
        std::set<std::string> keys{normalize_place_name(n.name)};
        for (const auto& alt : n.alternate_names) keys.insert(normalize_place_name(alt));
        for (const auto& k : keys) by_name_[k].push_back(i);
    }
    // Cycle check: walk every chain, colouring finished nodes.
    std::vector<int> state(nodes_.size(), 0);  // 0 new, 1 on stack, 2 done
    for (std::size_t start = 0; start < nodes_.size(); ++start) {
        std::vector<std::size_t> chain;
        std::size_t cur = start;
        while (state[cur] == 0) {
            state[cur] = 1;
            chain.push_back(cur);
            if (!nodes_[cur].parent_id) break;
            cur = by_id_.at(*nodes_[cur].parent_id);
            if (state[cur] == 1) {
                std::string path;
                auto from = std::find(chain.begin(), chain.end(), cur);
                for (auto it = from; it != chain.end(); ++it) path += fmt::format("{} -> ", nodes_[*it].id);
                path += std::to_string(nodes_[cur].id);
                throw GazetteerError("parent cycle detected: " + path);
            }
        }
        for (auto i : chain) state[i] = 2;
    }
}

const GazetteerNode* Gazetteer::find(std::int64_t id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &nodes_[it->second];
}

const GazetteerNode* Gazetteer::resolve(std::string_view name) const {
    auto it = by_name_.find(normalize_place_name(name));
    if (it == by_name_.end()) return nullptr;
    const GazetteerNode* best = nullptr;
    for (auto i : it->second) {
        const auto& n = nodes_[i];
        if (!best) {
            best = &n;
            continue;
        }
        int rn = feature_rank(n.feature_class);
        int rb = feature_rank(best->feature_class);
        if (rn < rb || (rn == rb && n.id < best->id)) best = &n;
    }
    return best;
}

const GazetteerNode* Gazetteer::resolve_location(std::string_view text) const {
    if (auto n = resolve(text)) return n;
    for (const auto& part : strings::split(text, ",;"))
        if (auto n = resolve(strings::trim(part))) return n;
    return nullptr;
}

int Gazetteer::depth(const GazetteerNode& n) const {
    int d = 1;
    const GazetteerNode* cur = &n;
    while (cur->parent_id) {
        cur = find(*cur->parent_id);
        ++d;
    }
    return d;
}

int Gazetteer::hierarchy_distance(const GazetteerNode& a, const GazetteerNode& b) const {
    std::unordered_map<std::int64_t, int> up_from_a;
    int steps = 0;
    for (const GazetteerNode* cur = &a; cur; cur = cur->parent_id ? find(*cur->parent_id) : nullptr)
        up_from_a.emplace(cur->id, steps++);
    steps = 0;
    for (const GazetteerNode* cur = &b; cur; cur = cur->parent_id ? find(*cur->parent_id) : nullptr, ++steps) {
        if (auto it = up_from_a.find(cur->id); it != up_from_a.end()) return it->second + steps;
    }
    return depth(a) + depth(b);
}

}  // namespace pillars::geo
