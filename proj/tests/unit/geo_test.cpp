#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "pillars/geo/gazetteer.hpp"
#include "pillars/geo/haversine.hpp"

namespace pillars::geo {
namespace {

const std::filesystem::path kFixture = std::filesystem::path(PILLARS_FIXTURE_DIR) / "gazetteer.tsv";
const std::filesystem::path kSmall = std::filesystem::path(PILLARS_TEST_DATA_DIR) / "gazetteer_5.tsv";

const Gazetteer& fixture() {
    static const Gazetteer g = Gazetteer::ingest(kFixture);
    return g;
}

const GazetteerNode& node(const Gazetteer& g, std::string_view name) {
    auto n = g.resolve(name);
    if (!n) throw std::runtime_error("fixture lacks " + std::string(name));
    return *n;
}

TEST(Ingest, FiveNodeFixture) {
    auto g = Gazetteer::ingest(kSmall);
    EXPECT_EQ(g.size(), 5u);
    EXPECT_TRUE(g.notes().empty());
}

TEST(Ingest, ShippedFixtureHasFiftyNodes) { EXPECT_EQ(fixture().size(), 50u); }

TEST(Ingest, EmptyInputGivesEmptyStore) {
    EXPECT_TRUE(Gazetteer::parse("").empty());
    EXPECT_TRUE(Gazetteer::parse("# only a comment\n\n").empty());
}

TEST(Ingest, CycleIsFatalAndNamesTheChain) {
    try {
        Gazetteer::parse("1\tA\t2\t0\t0\tregion\n2\tB\t1\t0\t0\tregion\n");
        FAIL() << "expected a cycle error";
    } catch (const GazetteerError& e) {
        EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("1 -> 2"), std::string::npos);
    }
    EXPECT_THROW(Gazetteer::parse("7\tSelf\t7\t0\t0\tcity\n"), GazetteerError);
}

TEST(Ingest, RejectsMalformedRows) {
    EXPECT_THROW(Gazetteer::parse("1\tA\t\t0\n"), GazetteerError);
    EXPECT_THROW(Gazetteer::parse("x\tA\t\t0\t0\tcity\n"), GazetteerError);
    EXPECT_THROW(Gazetteer::parse("1\tA\t\t91\t0\tcity\n"), GazetteerError);
    EXPECT_THROW(Gazetteer::parse("1\tA\t9\t0\t0\tcity\n"), GazetteerError);
}

TEST(Ingest, RepeatedIdKeepsFirstParent) {
    auto g = Gazetteer::parse(
        "1\tRoot\t\t0\t0\tworld\n2\tA\t1\t0\t0\tcountry\n3\tB\t1\t0\t0\tcountry\n"
        "4\tTown\t2\t0\t0\tcity\n4\tTown\t3\t0\t0\tcity\n");
    EXPECT_EQ(g.size(), 4u);
    EXPECT_EQ(*g.find(4)->parent_id, 2);
    EXPECT_EQ(g.notes().size(), 1u);
}

TEST(Resolve, CaseInsensitiveExactMatch) {
    const auto& g = fixture();
    ASSERT_NE(g.resolve("chicago"), nullptr);
    EXPECT_EQ(g.resolve("chicago")->name, "Chicago");
    EXPECT_EQ(g.resolve("  CHICAGO ")->name, "Chicago");
    EXPECT_EQ(g.resolve("Atlantis"), nullptr);
    EXPECT_EQ(g.resolve("Chicag"), nullptr);
}

TEST(Resolve, AlternateNames) {
    EXPECT_EQ(fixture().resolve("USA")->name, "United States");
    EXPECT_EQ(fixture().resolve("Kiev")->name, "Kyiv");
}

TEST(Resolve, DuplicateNamesAreDeterministic) {
    const auto& g = fixture();
    auto s = g.resolve("Springfield");
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->id, 9);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(g.resolve("springfield"), s);
    // Region outranks a city of the same name.
    EXPECT_EQ(g.resolve("Berlin")->feature_class, "region");
    EXPECT_EQ(g.resolve("New York")->feature_class, "region");
}

TEST(Resolve, LocationTextFallsBackToParts) {
    const auto& g = fixture();
    EXPECT_EQ(g.resolve_location("Manila, Philippines")->name, "Manila");
    EXPECT_EQ(g.resolve_location("Somewhere; France")->name, "France");
    EXPECT_EQ(g.resolve_location("Nowhere, Atlantis"), nullptr);
}

TEST(FeatureRank, OrdersCountryRegionCity) {
    EXPECT_LT(feature_rank("country"), feature_rank("region"));
    EXPECT_LT(feature_rank("ADM1"), feature_rank("PPLC"));
    EXPECT_EQ(feature_rank("PCLI"), feature_rank("country"));
    EXPECT_EQ(feature_rank("lake"), 4);
}

TEST(HierarchyDistance, FixtureExamples) {
    const auto& g = fixture();
    EXPECT_EQ(g.hierarchy_distance(node(g, "Chicago"), node(g, "Chicago")), 0);
    EXPECT_EQ(g.hierarchy_distance(node(g, "USA"), node(g, "Chicago")), 2);
    EXPECT_EQ(g.hierarchy_distance(node(g, "Illinois"), node(g, "France")), 3);
    EXPECT_EQ(g.hierarchy_distance(node(g, "Illinois"), node(g, "Texas")), 2);
    EXPECT_EQ(g.hierarchy_distance(node(g, "Chicago"), node(g, "Paris")), 6);
}

TEST(HierarchyDistance, DisjointTreesMeetAtVirtualRoot) {
    auto g = Gazetteer::parse("1\tA\t\t0\t0\tcountry\n2\tA1\t1\t0\t0\tcity\n3\tB\t\t0\t0\tcountry\n");
    EXPECT_EQ(g.depth(*g.find(1)), 1);
    EXPECT_EQ(g.depth(*g.find(2)), 2);
    EXPECT_EQ(g.hierarchy_distance(*g.find(2), *g.find(3)), 3);
    EXPECT_EQ(g.hierarchy_distance(*g.find(1), *g.find(3)), 2);
}

TEST(HierarchyDistanceProperty, IsAMetricOnTheFixture) {
    const auto& nodes = fixture().nodes();
    const auto& g = fixture();
    for (const auto& a : nodes) {
        EXPECT_EQ(g.hierarchy_distance(a, a), 0);
        for (const auto& b : nodes) {
            const int ab = g.hierarchy_distance(a, b);
            ASSERT_EQ(ab, g.hierarchy_distance(b, a));
            if (a.id != b.id) ASSERT_GT(ab, 0);
            for (const auto& c : nodes) ASSERT_LE(ab, g.hierarchy_distance(a, c) + g.hierarchy_distance(c, b));
        }
    }
}

TEST(Haversine, ClosedFormExamples) {
    EXPECT_EQ(haversine_km({10, 20}, {10, 20}), 0.0);
    EXPECT_NEAR(haversine_km({0, 0}, {0, 1}), 111.19492664455873, 1e-6);
    EXPECT_NEAR(haversine_km({0, 0}, {0, 180}), 20015.086796020572, 1e-6);
    EXPECT_NEAR(haversine_km({48.8566, 2.3522}, {51.5074, -0.1278}), 343.55606034104153, 1e-6);
}

TEST(HaversineProperty, MetricAxiomsOnRandomPairs) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
    const double bound = kEarthRadiusKm * 3.14159265358979323846 + 1e-9;
    for (int i = 0; i < 100; ++i) {
        GeoPoint a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)}, c{lat(rng), lon(rng)};
        const double ab = haversine_km(a, b);
        EXPECT_GE(ab, 0.0);
        EXPECT_GT(ab, 0.0);
        EXPECT_LE(ab, bound);
        EXPECT_DOUBLE_EQ(ab, haversine_km(b, a));
        EXPECT_EQ(haversine_km(a, a), 0.0);
        EXPECT_LE(ab, haversine_km(a, c) + haversine_km(c, b) + 1e-9);
    }
}

}  // namespace
}  // namespace pillars::geo
