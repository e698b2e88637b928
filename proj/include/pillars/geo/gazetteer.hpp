#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pillars/core/types.hpp"

namespace pillars::geo {

struct GazetteerNode {
    std::int64_t id = 0;
    std::string name;
    std::optional<std::int64_t> parent_id;
    double lat = 0.0;
    double lon = 0.0;
    std::string feature_class;
    std::vector<std::string> alternate_names;

    GeoPoint point() const { return {lat, lon}; }
};

class GazetteerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lower rank wins name collisions: continent, country, region, city, other.
int feature_rank(std::string_view feature_class);

/// Immutable place hierarchy. Built once by ingest; every query is const and
/// safe to share across threads.
///
/// Dump format (UTF-8, tab-separated, '#' starts a comment line):
///
///     id  name  parent_id  lat  lon  feature_class  [alternate,names]
///
/// `parent_id` is empty for roots. `feature_class` accepts the readable
/// names (continent, country, region, city) or GeoNames feature codes
/// (CONT, PCLI, ADM1.., PPL..). A GeoNames hierarchy export joined with the
/// main dump maps onto these columns directly. When an id appears more than
/// once, the first record's parent is kept so the hierarchy stays a tree.
class Gazetteer {
public:
    Gazetteer() = default;

    static Gazetteer ingest(const std::filesystem::path& dump);
    /// Throws GazetteerError on malformed rows, unknown parents or cycles.
    static Gazetteer parse(std::string_view text);
    static Gazetteer from_nodes(std::vector<GazetteerNode> nodes);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const std::vector<GazetteerNode>& nodes() const { return nodes_; }
    const GazetteerNode* find(std::int64_t id) const;

    /// Case-insensitive exact match on name or alternate name. Among several
    /// hits the best feature_rank wins, then the smallest id.
    const GazetteerNode* resolve(std::string_view name) const;

    /// resolve() on the full text, then on each comma/semicolon separated
    /// part from left to right.
    const GazetteerNode* resolve_location(std::string_view text) const;

    /// Edges from the node up to (and including) its root. Roots hang one
    /// edge below a virtual global root, so depth(root) == 1.
    int depth(const GazetteerNode& n) const;

    /// Tree distance through the lowest common ancestor; nodes in different
    /// trees meet at the virtual global root.
    int hierarchy_distance(const GazetteerNode& a, const GazetteerNode& b) const;

    /// Records that repeated an id with a different parent, dropped at ingest.
    const std::vector<std::string>& notes() const { return notes_; }

private:
    void index();

    std::vector<GazetteerNode> nodes_;
    std::unordered_map<std::int64_t, std::size_t> by_id_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_name_;
    std::vector<std::string> notes_;
};

std::string normalize_place_name(std::string_view name);

}  // namespace pillars::geo
