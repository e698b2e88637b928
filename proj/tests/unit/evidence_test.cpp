#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/hash.hpp"
#include "pillars/evidence/cache.hpp"
#include "pillars/evidence/extract.hpp"
#include "pillars/evidence/fetch.hpp"
#include "pillars/evidence/filters.hpp"
#include "pillars/evidence/html.hpp"
#include "pillars/evidence/ris.hpp"
#include "pillars/evidence/scrape.hpp"

using namespace pillars;
using namespace pillars::evidence;
namespace fs = std::filesystem;

namespace {

const fs::path kWeb = fs::path(PILLARS_TEST_DATA_DIR) / "web";

fs::path temp_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("pillars-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

EvidenceItem item(std::string url, std::optional<DateValue> date, int rank = 1) {
    EvidenceItem e;
    e.url = std::move(url);
    e.hostname = url_hostname(e.url);
    e.publication_date = date;
    e.retrieval_rank = rank;
    return e;
}

Blocklist shipped_blocklist() { return Blocklist::load_file(fs::path(PILLARS_RESOURCE_DIR) / "ifcn_blocklist.txt"); }

}  // namespace

TEST(Html, ParsesTolerantMarkup) {
    auto doc = html::parse("<div><p>one<p>two<br>three</div><img src=x.jpg><script>if (a<b) {}</script>");
    auto ps = html::find_all(*doc, "p");
    ASSERT_EQ(ps.size(), 2u);
    EXPECT_EQ(ps[0]->inner_text(), "one");
    EXPECT_EQ(ps[1]->inner_text(), "two three");
    EXPECT_EQ(html::find_first(*doc, "img")->attr("src"), "x.jpg");
    EXPECT_EQ(html::find_first(*doc, "script")->children.front()->text, "if (a<b) {}");
}

TEST(Html, DecodesEntities) {
    EXPECT_EQ(html::decode_entities("a &amp; b &lt;c&gt; &#233; &#x41; &nbsp;"), "a & b <c> \xC3\xA9 A \xC2\xA0");
    EXPECT_EQ(html::decode_entities("&bogus; &"), "&bogus; &");
}

TEST(Html, NeverThrowsOnGarbage) {
    std::mt19937 rng(5);
    const std::string alphabet = "<>/=\"' abcdp!-&;#";
    for (int i = 0; i < 300; ++i) {
        std::string s;
        for (int k = 0; k < 80; ++k) s += alphabet[rng() % alphabet.size()];
        EXPECT_NO_THROW(html::parse(s));
        EXPECT_NO_THROW(extract_page(s, "https://x.example/"));
    }
}

TEST(Extract, ArticleWithMetadata) {
    auto html = read_file(kWeb / "article.html");
    ASSERT_TRUE(html);
    auto p = extract_page(*html, "https://lakeside.example.com/news/2013/flood");
    ASSERT_TRUE(p);
    EXPECT_EQ(p->title, "Flooded streets after record rain");
    EXPECT_EQ(p->description, "Heavy rain flooded several neighborhoods on Thursday.");
    EXPECT_EQ(p->author, "Dana Reyes");
    EXPECT_EQ(p->sitename, "Lakeside Daily");
    EXPECT_EQ(p->publication_date, DateValue::ymd(2013, 4, 18));
    EXPECT_NE(p->body_text.find("knee-deep water"), std::string::npos);
    EXPECT_NE(p->body_text.find("two shelters & urged"), std::string::npos);
    EXPECT_EQ(p->body_text.find("Politics"), std::string::npos);
    EXPECT_EQ(p->body_text.find("Copyright"), std::string::npos);
    EXPECT_EQ(p->body_text.find("Share"), std::string::npos);
    EXPECT_EQ(p->body_text.find("More weather"), std::string::npos);
    EXPECT_EQ(p->body_text.find("April 18, 2013"), std::string::npos) << "captions are kept apart from text";
    ASSERT_EQ(p->image_urls.size(), 2u);
    EXPECT_EQ(p->image_urls[0], "https://lakeside.example.com/media/flood-main.jpg");
    EXPECT_EQ(p->image_urls[1], "https://lakeside.example.com/news/2013/media/flood-street.jpg");
    ASSERT_EQ(p->image_captions.size(), 1u);
    EXPECT_EQ(p->image_captions[0], "A resident crosses a flooded intersection on April 18, 2013.");
}

TEST(Extract, JsonLdAndTimeFallbacks) {
    auto p = extract_page(*read_file(kWeb / "jsonld.html"), "https://journal.example.fr/protest");
    ASSERT_TRUE(p);
    EXPECT_EQ(p->title, "Protest fills the square");
    EXPECT_EQ(p->author, "Luc Martin");
    EXPECT_EQ(p->sitename, "Le Journal");
    EXPECT_EQ(p->publication_date, DateValue::ymd(2016, 3, 31));

    auto t = extract_page(*read_file(kWeb / "timetag.html"), "https://market.example.net/reopen");
    ASSERT_TRUE(t);
    EXPECT_EQ(t->publication_date, DateValue::ym(2019, 7));
    EXPECT_EQ(t->title, "Market reopens");
}

TEST(Extract, UndatedPageAndAltCaptions) {
    auto p = extract_page(*read_file(kWeb / "undated.html"), "https://gallery.example.org/night");
    ASSERT_TRUE(p);
    EXPECT_FALSE(p->publication_date);
    EXPECT_EQ(p->image_captions, std::vector<std::string>{"Skyline at night"});
}

TEST(Extract, RejectsNonMarkup) {
    EXPECT_FALSE(extract_page("just text", "https://a.example/"));
    EXPECT_FALSE(extract_page("", "https://a.example/"));
    EXPECT_FALSE(extract_page(std::string("<p>a\0b</p>", 10), "https://a.example/"));
}

TEST(Extract, ResolveUrl) {
    EXPECT_EQ(resolve_url("https://a.example/x/y.html?q=1", "z.jpg"), "https://a.example/x/z.jpg");
    EXPECT_EQ(resolve_url("https://a.example/x/y.html", "/z.jpg"), "https://a.example/z.jpg");
    EXPECT_EQ(resolve_url("https://a.example/x/", "//cdn.example/z.jpg"), "https://cdn.example/z.jpg");
    EXPECT_EQ(resolve_url("https://a.example", "data:image/png;base64,AAA"), "");
}

TEST(Scrape, FullyPopulatedItem) {
    FixtureFetcher f(kWeb);
    auto e = scrape("https://lakeside.example.com/news/2013/flood", f);
    EXPECT_EQ(e.scrape_status, ScrapeStatus::ok);
    EXPECT_EQ(e.hostname, "lakeside.example.com");
    EXPECT_EQ(e.title, "Flooded streets after record rain");
    EXPECT_EQ(e.publication_date, DateValue::ymd(2013, 4, 18));
    EXPECT_FALSE(e.body_text.empty());
    EXPECT_FALSE(e.validate());
}

TEST(Scrape, StatusMapping) {
    FixtureFetcher f(kWeb);
    EXPECT_EQ(scrape("https://missing.example.com/nothing", f).scrape_status, ScrapeStatus::fetch_error);
    EXPECT_EQ(scrape("https://broken.example.com/page", f).scrape_status, ScrapeStatus::fetch_error);
    EXPECT_EQ(scrape("https://private.example.com/post", f).scrape_status, ScrapeStatus::blocked);
    EXPECT_EQ(scrape("https://api.example.com/item", f).scrape_status, ScrapeStatus::extract_error);
    EXPECT_EQ(scrape("https://plain.example.com/", f).scrape_status, ScrapeStatus::extract_error);
    EXPECT_EQ(scrape("not a url", f).scrape_status, ScrapeStatus::fetch_error);
    auto undated = scrape("https://gallery.example.org/night", f);
    EXPECT_EQ(undated.scrape_status, ScrapeStatus::ok);
    EXPECT_FALSE(undated.publication_date);
}

TEST(Scrape, AllKeepsRankOrderAndMergesMatchedImages) {
    FixtureFetcher f(kWeb);
    std::vector<RisResult> ris = {
        {"https://market.example.net/reopen", MatchKind::full, {"https://img.example/m.jpg"}},
        {"https://missing.example.com/x", MatchKind::partial, {}},
        {"https://lakeside.example.com/news/2013/flood", MatchKind::partial,
         {"https://lakeside.example.com/media/flood-main.jpg"}},
        {"https://gallery.example.org/night", MatchKind::full, {}},
    };
    auto items = scrape_all(ris, f, {.threads = 4});
    ASSERT_EQ(items.size(), 4u);
    for (std::size_t i = 0; i < items.size(); ++i) {
        EXPECT_EQ(items[i].url, ris[i].page_url);
        EXPECT_EQ(items[i].retrieval_rank, int(i) + 1);
    }
    EXPECT_EQ(items[0].image_urls.front(), "https://img.example/m.jpg");
    EXPECT_EQ(items[1].scrape_status, ScrapeStatus::fetch_error);
    ASSERT_EQ(items[2].image_urls.size(), 2u) << "a matched image already on the page is not repeated";
    EXPECT_EQ(items[2].image_urls[0], "https://lakeside.example.com/media/flood-main.jpg");
}

TEST(Scrape, CacheReplaysWithoutFetching) {
    auto dir = temp_dir("scrape-cache");
    EvidenceCache cache(dir);
    std::vector<RisResult> ris = {{"https://lakeside.example.com/news/2013/flood", MatchKind::full, {}},
                                  {"https://missing.example.com/x", MatchKind::partial, {}}};
    FixtureFetcher f1(kWeb);
    auto first = scrape_all(ris, f1, {.threads = 2, .cache = &cache});
    EXPECT_EQ(f1.calls(), 2u);
    FixtureFetcher f2(kWeb);
    auto second = scrape_all(ris, f2, {.threads = 2, .cache = &cache});
    EXPECT_EQ(second, first);
    EXPECT_EQ(f2.calls(), 1u) << "only the failed fetch is retried";
    fs::remove_all(dir);
}

TEST(PoliteFetcher, SerializesPerHost) {
    class SlowFetcher : public Fetcher {
    public:
        FetchResponse fetch(const std::string&) override {
            std::this_thread::sleep_for(std::chrono::milliseconds(5));
            return {200, "<p>x</p>", "text/html", ""};
        }
    };
    auto polite = std::make_shared<PoliteFetcher>(std::make_shared<SlowFetcher>(), std::chrono::milliseconds(2));
    std::vector<RisResult> ris;
    for (int i = 0; i < 12; ++i)
        ris.push_back({"https://" + std::string(i % 2 ? "a" : "b") + ".example.com/" + std::to_string(i),
                       MatchKind::full, {}});
    auto t0 = std::chrono::steady_clock::now();
    auto items = scrape_all(ris, *polite, {.threads = 6});
    auto elapsed = std::chrono::steady_clock::now() - t0;
    EXPECT_EQ(items.size(), 12u);
    EXPECT_EQ(polite->max_host_concurrency(), 1);
    EXPECT_GE(elapsed, std::chrono::milliseconds(6 * 5 + 5 * 2));
}

TEST(HttpFetcher, LocalServer) {
    httplib::Server srv;
    srv.Get("/ok", [](const httplib::Request& req, httplib::Response& res) {
        res.set_content("<p>hello " + req.get_header_value("User-Agent") + "</p>", "text/html");
    });
    srv.Get("/gone", [](const httplib::Request&, httplib::Response& res) { res.status = 404; });
    std::atomic<int> flaky_calls{0};
    srv.Get("/flaky", [&](const httplib::Request&, httplib::Response& res) {
        if (flaky_calls++ == 0) {
            res.status = 503;
            return;
        }
        res.set_content("<p>recovered</p>", "text/html");
    });
    int port = srv.bind_to_any_port("127.0.0.1");
    std::thread t([&] { srv.listen_after_bind(); });
    srv.wait_until_ready();
    const auto base = "http://127.0.0.1:" + std::to_string(port);

    HttpFetcher f({.timeout = std::chrono::seconds(5), .retries = 2, .user_agent = "pillars-test",
                   .retry_delay = std::chrono::milliseconds(1)});
    auto ok = f.fetch(base + "/ok");
    EXPECT_EQ(ok.status, 200);
    EXPECT_NE(ok.body.find("pillars-test"), std::string::npos);
    EXPECT_EQ(scrape(base + "/gone", f).scrape_status, ScrapeStatus::fetch_error);
    EXPECT_EQ(f.fetch(base + "/flaky").body, "<p>recovered</p>");
    EXPECT_EQ(flaky_calls.load(), 2);
    srv.stop();
    t.join();

    auto refused = f.fetch(base + "/ok");
    EXPECT_EQ(refused.status, 0);
    EXPECT_FALSE(refused.error.empty());
}

TEST(FilterTemporal, RuleExamples) {
    const auto fc = DateValue::ymd(2022, 1, 1);
    std::vector<EvidenceItem> items = {item("https://a.example/1", DateValue::ymd(2022, 2, 1), 1),
                                       item("https://a.example/2", DateValue::ymd(2021, 12, 31), 2),
                                       item("https://a.example/3", std::nullopt, 3),
                                       item("https://a.example/4", DateValue::ymd(2022, 1, 1), 4)};
    FilterLog log;
    auto kept = filter_temporal(items, fc, false, &log);
    ASSERT_EQ(kept.size(), 3u);
    EXPECT_EQ(kept[0].url, "https://a.example/2");
    EXPECT_EQ(kept[1].url, "https://a.example/3");
    EXPECT_EQ(kept[2].url, "https://a.example/4") << "same-day evidence is not after the fact-check";
    ASSERT_EQ(log.size(), 2u);
    EXPECT_FALSE(log[0].kept);
    EXPECT_TRUE(log[1].kept);
    EXPECT_EQ(log[1].reason, "undated");

    auto strict = filter_temporal(items, fc, true);
    EXPECT_EQ(strict.size(), 2u);
}

TEST(FilterTemporal, PartialDates) {
    const auto fc = DateValue::ymd(2022, 1, 1);
    EXPECT_FALSE(published_after(DateValue::y(2022), fc));
    EXPECT_FALSE(published_after(DateValue::ym(2022, 1), fc));
    EXPECT_TRUE(published_after(DateValue::ym(2022, 2), fc));
    EXPECT_TRUE(published_after(DateValue::y(2023), fc));
    EXPECT_FALSE(published_after(DateValue::y(2021), fc));
}

TEST(Blocklist, MatchesOnLabelBoundaries) {
    auto b = Blocklist::parse("# comment\nFactly.in\n*.pesacheck.org  # trailing\n\n.fullfact.org\n");
    EXPECT_EQ(b.patterns().size(), 3u);
    EXPECT_TRUE(b.matches("factly.in"));
    EXPECT_TRUE(b.matches("www.FACTLY.in"));
    EXPECT_TRUE(b.matches("pesacheck.org"));
    EXPECT_TRUE(b.matches("a.b.fullfact.org."));
    EXPECT_FALSE(b.matches("notfactly.in"));
    EXPECT_FALSE(b.matches("factly.in.example.com"));
    EXPECT_FALSE(b.matches(""));
}

TEST(FilterFcDomains, ShippedResource) {
    auto b = shipped_blocklist();
    for (auto host : {"factly.in", "pesacheck.org", "211check.org", "www.snopes.com", "factcheck.afp.com"})
        EXPECT_TRUE(b.matches(host)) << host;
    std::vector<EvidenceItem> items = {item("https://factly.in/fact-check-photo", std::nullopt),
                                       item("https://news.example.com/story", std::nullopt),
                                       item("https://telugu.factly.in/x", std::nullopt)};
    FilterLog log;
    auto kept = filter_fc_domains(items, b, &log);
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_EQ(kept[0].hostname, "news.example.com");
    EXPECT_EQ(log.size(), 2u);

    EvidenceItem no_host = item("https://www.factly.in/y", std::nullopt);
    no_host.hostname.clear();
    EXPECT_TRUE(filter_fc_domains({no_host}, b).empty()) << "host falls back to the URL";
}

TEST(Filters, RandomizedPostconditionAndIdempotence) {
    const auto b = shipped_blocklist();
    const std::vector<std::string> hosts = {"factly.in",    "www.factly.in",     "pesacheck.org", "news.example.com",
                                            "blog.example", "snopes.com",        "m.snopes.com",  "notsnopes.com",
                                            "x.y.z.org",    "fullfact.org.evil", "211check.org",  "daily.example.co.uk"};
    std::mt19937 rng(2024);
    int survivors = 0;
    for (int set = 0; set < 200; ++set) {
        const auto fc = DateValue::ymd(2019 + int(rng() % 5), 1 + int(rng() % 12), 1 + int(rng() % 28));
        std::vector<EvidenceItem> items;
        const int n = 1 + int(rng() % 12);
        for (int i = 0; i < n; ++i) {
            std::optional<DateValue> d;
            switch (rng() % 4) {
                case 0: break;
                case 1: d = DateValue::y(2017 + int(rng() % 8)); break;
                case 2: d = DateValue::ym(2017 + int(rng() % 8), 1 + int(rng() % 12)); break;
                default: d = DateValue::ymd(2017 + int(rng() % 8), 1 + int(rng() % 12), 1 + int(rng() % 28));
            }
            items.push_back(item("https://" + hosts[rng() % hosts.size()] + "/p" + std::to_string(i), d, i + 1));
        }
        const bool strict = rng() % 2;
        auto once = filter_fc_domains(filter_temporal(items, fc, strict), b);
        for (const auto& e : once) {
            EXPECT_FALSE(b.matches(e.hostname)) << e.url;
            if (e.publication_date) EXPECT_FALSE(published_after(*e.publication_date, fc)) << e.url;
            else EXPECT_FALSE(strict);
            if (e.publication_date && e.publication_date->has_day())
                EXPECT_LE(days_since_epoch(*e.publication_date), days_since_epoch(fc));
        }
        EXPECT_EQ(filter_temporal(once, fc, strict), once);
        EXPECT_EQ(filter_fc_domains(once, b), once);
        auto t = filter_temporal(items, fc, strict);
        EXPECT_EQ(filter_temporal(t, fc, strict), t);
        auto d = filter_fc_domains(items, b);
        EXPECT_EQ(filter_fc_domains(d, b), d);
        survivors += int(once.size());
    }
    EXPECT_GT(survivors, 100);
}

TEST(Cache, RoundTripMissAndOverwrite) {
    auto dir = temp_dir("cache");
    EvidenceCache c(dir);
    EXPECT_FALSE(c.get("page", "https://a.example/x"));
    std::string bytes("binary\0data\xff", 12);
    EXPECT_FALSE(c.put("page", "https://a.example/x", bytes));
    EXPECT_EQ(c.get("page", "https://a.example/x"), bytes);
    EXPECT_EQ(c.get("page", "HTTPS://A.EXAMPLE/x#frag"), bytes) << "keys are normalized";
    EXPECT_FALSE(c.get("other", "https://a.example/x"));
    EXPECT_TRUE(c.put("page", "https://a.example/x", "second"));
    EXPECT_EQ(c.get("page", "https://a.example/x"), "second");
    fs::remove_all(dir);
}

TEST(Cache, CorruptEntryIsMiss) {
    auto dir = temp_dir("cache-corrupt");
    EvidenceCache c(dir);
    c.put("page", "k", "payload");
    auto p = c.path_for("page", "k");
    {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << "pillars-cache/1 " << sha256_hex("payload") << "\npayl0ad";
    }
    EXPECT_FALSE(c.get("page", "k"));
    {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << "garbage";
    }
    EXPECT_FALSE(c.get("page", "k"));
    c.put("page", "k", "payload");
    EXPECT_EQ(c.get("page", "k"), "payload");
    fs::remove_all(dir);
}

TEST(Cache, KeyNormalization) {
    EXPECT_EQ(normalize_cache_key("  HTTPS://Example.COM/Path?q=1#top "), "https://example.com/Path?q=1");
    EXPECT_EQ(normalize_cache_key(" images/a.jpg "), "images/a.jpg");
}

TEST(Hash, KnownVectors) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(base64_encode("hello"), "aGVsbG8=");
    EXPECT_EQ(base64_encode(""), "");
    for (const std::string& s : std::vector<std::string>{"", "a", "ab", "abc", "abcd", std::string("\0\xff\x10", 3)})
        EXPECT_EQ(base64_decode(base64_encode(s)), s);
    EXPECT_FALSE(base64_decode("abc"));
    EXPECT_FALSE(base64_decode("a!c="));
}

namespace {

class CountingProvider : public RisProvider {
public:
    int calls = 0;
    int failures_before_success = 0;
    bool retryable = true;
    int produce = 60;
    std::vector<RisResult> search(std::string_view, int) override {
        ++calls;
        if (calls <= failures_before_success) throw backends::BackendError("unavailable", retryable);
        std::vector<RisResult> out;
        for (int i = 0; i < produce; ++i) out.push_back({"https://r.example/" + std::to_string(i), MatchKind::full, {}});
        return out;
    }
};

}  // namespace

TEST(RisSearch, TruncatesToMaxUrls) {
    CountingProvider p;
    RetrievalConfig cfg;
    auto r = ris_search("img.jpg", p, cfg);
    ASSERT_EQ(r.size(), 50u);
    EXPECT_EQ(r.front().page_url, "https://r.example/0");
    EXPECT_EQ(r.back().page_url, "https://r.example/49");
    p.produce = 0;
    EXPECT_TRUE(ris_search("img.jpg", p, cfg).empty());
}

TEST(RisSearch, RetriesThenFails) {
    RetryPolicy fast{.attempts = 3, .base_delay = std::chrono::milliseconds(1), .factor = 2.0};
    CountingProvider p;
    p.failures_before_success = 2;
    EXPECT_EQ(ris_search("img.jpg", p, {}, fast).size(), 50u);
    EXPECT_EQ(p.calls, 3);

    CountingProvider q;
    q.failures_before_success = 10;
    EXPECT_THROW(ris_search("img.jpg", q, {}, fast), RetrievalError);
    EXPECT_EQ(q.calls, 3);

    CountingProvider fatal;
    fatal.failures_before_success = 10;
    fatal.retryable = false;
    EXPECT_THROW(ris_search("img.jpg", fatal, {}, fast), RetrievalError);
    EXPECT_EQ(fatal.calls, 1);
}

TEST(RisSearch, FixtureProviderIsDeterministic) {
    std::map<std::string, std::vector<RisResult>> m;
    m["case-01"] = {{"https://a.example/1", MatchKind::full, {}}, {"https://b.example/2", MatchKind::partial, {}}};
    FixtureRisProvider p(m);
    auto a = ris_search("fixtures/images/case-01.jpg", p, {});
    auto b = ris_search("case-01.jpg", p, {});
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(ris_search("unknown.png", p, {}).empty());
}

TEST(RisSearch, WireSchema) {
    auto j = Json::parse(R"({"results":[{"page_url":"https://a.example/x","match_kind":"partial",
                                        "matched_image_urls":["https://a.example/i.jpg"]}]})");
    auto r = ris_response_from_json(j);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].match_kind, MatchKind::partial);
    EXPECT_EQ(ris_result_from_json(to_json(r[0])), r[0]);
    EXPECT_THROW(ris_response_from_json(Json::parse(R"({"results":[{"page_url":"nope"}]})")), std::invalid_argument);
    EXPECT_THROW(ris_response_from_json(Json::parse(R"({"x":1})")), std::invalid_argument);
}

TEST(RetrievalConfig, Validates) {
    RetrievalConfig c;
    EXPECT_FALSE(c.validate());
    c.max_urls = 0;
    EXPECT_TRUE(c.validate());
}
