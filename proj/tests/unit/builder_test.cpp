#include <random>

#include <gtest/gtest.h>

#include "../support/world.hpp"
#include "pillars/builder/build.hpp"
#include "pillars/builder/language.hpp"
#include "pillars/core/atomic_file.hpp"

using namespace pillars;
using namespace pillars::builder;
using pillars::testing::kFixtures;
using pillars::testing::temp_dir;

namespace {

const std::vector<std::string> kDomains{"factly.in", "pesacheck.org", "211check.org"};

backends::MockSuite& suite() {
    static auto s = backends::load_mock_suite(kFixtures / "mock", kFixtures / "images");
    return s;
}

/// Chat backend with scripted replies, recording every request.
class ScriptedChat : public backends::ChatBackend {
public:
    explicit ScriptedChat(std::vector<std::string> replies) : replies_(std::move(replies)) {}
    backends::ChatResponse chat(const backends::ChatRequest& req) override {
        requests.push_back(req);
        if (throw_error) throw backends::BackendError("connection refused", true);
        const auto i = std::min(requests.size() - 1, replies_.size() - 1);
        return {replies_[i], false};
    }
    std::vector<backends::ChatRequest> requests;
    bool throw_error = false;

private:
    std::vector<std::string> replies_;
};

class CountingChat : public backends::ChatBackend {
public:
    explicit CountingChat(backends::ChatBackend& inner) : inner_(inner) {}
    backends::ChatResponse chat(const backends::ChatRequest& req) override {
        ++calls;
        return inner_.chat(req);
    }
    int calls = 0;

private:
    backends::ChatBackend& inner_;
};

FcArticle article(std::string title, std::string body) {
    FcArticle a;
    a.url = "https://factcheck.example/" + title;
    a.title = std::move(title);
    a.body_text = std::move(body);
    a.publication_date = DateValue::ymd(2021, 3, 4);
    a.image_url = "https://factcheck.example/img.jpg";
    return a;
}

const std::string kPlanePrompt = "The photo was taken in 2013 in a US plane in the Philippines.";

BuildOptions fixture_options() {
    BuildOptions o;
    o.harvest.domains = kDomains;
    o.threads = 2;
    return o;
}

}  // namespace

// ---- harvesting ----

TEST(CollectArchiveUrls, KeepsKeywordUrlsOfTheRequestedYears) {
    HarvestConfig cfg;
    cfg.domains = {"factly.in"};
    auto h = collect_archive_urls(cfg, *suite().archive);
    EXPECT_EQ(h.archived, 9u);  // the 2018 snapshot is outside the range
    EXPECT_EQ(h.urls, (std::vector<std::string>{
                          "https://factly.in/fake-news/old-photo-of-train-accident/",
                          "https://factly.in/fake-news/edited-image-of-parliament/",
                          "https://factly.in/fake-news/picture-of-bridge-collapse-is-old/",
                          "https://factly.in/fake-news/photo-de-manifestation-a-paris/",
                      }));
}

TEST(CollectArchiveUrls, DeduplicatesSnapshotsAndRecordsFailingDomains) {
    HarvestConfig cfg;
    cfg.domains = {"211check.org", "gone.example", "pesacheck.org"};
    auto h = collect_archive_urls(cfg, *suite().archive);
    EXPECT_EQ(h.urls, (std::vector<std::string>{"https://211check.org/photo-of-cattle-raid-is-from-2017/",
                                                "https://pesacheck.org/edited-image-of-parliament-shared-again"}));
    ASSERT_EQ(h.failures.size(), 1u);
    EXPECT_EQ(h.failures[0].domain, "gone.example");
}

TEST(CollectArchiveUrls, RejectsInvertedYearRange) {
    HarvestConfig cfg;
    cfg.domains = {"factly.in"};
    cfg.start_year = 2024;
    EXPECT_THROW(collect_archive_urls(cfg, *suite().archive), std::invalid_argument);
}

TEST(KeywordFilter, MatchesPathOnlyAndIgnoresCase) {
    const std::vector<std::string> kw{"photo", "image", "picture"};
    EXPECT_FALSE(url_has_keyword("https://factly.in/fake-news/video-of-flood", kw));
    EXPECT_TRUE(url_has_keyword("https://x.org/PHOTO-story", kw));
    EXPECT_FALSE(url_has_keyword("https://photo.example.com/story", kw));
    EXPECT_FALSE(url_has_keyword("https://x.org/story?img=photo", kw));
}

TEST(KeywordFilter, IsIdempotent) {
    std::mt19937 rng(11);
    const std::vector<std::string> words{"photo", "video", "image", "claim", "Picture", "news", "x"};
    for (int round = 0; round < 50; ++round) {
        std::vector<std::string> urls;
        for (int i = 0; i < 20; ++i)
            urls.push_back("https://s.org/" + words[rng() % words.size()] + "-" + words[rng() % words.size()]);
        auto once = filter_keyword_urls(urls, {"photo", "image", "picture"});
        EXPECT_EQ(filter_keyword_urls(once, {"photo", "image", "picture"}), once);
    }
}

// ---- scraping ----

TEST(ScrapeFcArticle, ExtractsTheFourFields) {
    evidence::FixtureFetcher f(kFixtures / "web");
    auto a = scrape_fc_article("https://factly.in/fake-news/old-photo-of-train-accident/", f);
    ASSERT_TRUE(a.usable());
    EXPECT_EQ(a.title, "Old photo of a train accident shared as recent");
    EXPECT_EQ(a.publication_date, DateValue::ymd(2021, 4, 5));
    EXPECT_NE(a.body_text.find("Arun Das"), std::string::npos);
    EXPECT_EQ(a.image_url, "https://factly.in/wp-content/uploads/train-accident.jpg");
}

TEST(ScrapeFcArticle, NoImageIsUnusableAnd404IsAFetchError) {
    auto dir = temp_dir("fc-noimg");
    write_file_atomic(dir / "a.html", "<html><head><title>Claim about vaccines</title></head><body><article>"
                                     "<p>A claim about vaccines is false.</p></article></body></html>");
    write_file_atomic(dir / "index.json", R"({"https://x.org/a": {"file": "a.html"}})");
    evidence::FixtureFetcher f(dir);
    auto a = scrape_fc_article("https://x.org/a", f);
    EXPECT_EQ(a.status, ScrapeStatus::ok);
    EXPECT_FALSE(a.usable());
    auto missing = scrape_fc_article("https://x.org/missing", f);
    EXPECT_EQ(missing.status, ScrapeStatus::fetch_error);
    EXPECT_FALSE(missing.usable());
}

// ---- annotation ----

TEST(ExtractAnnotations, PlaneArticleGivesDateAndLocation) {
    ScriptedChat chat({R"({"provenance": "Yes", "source": "Not enough information", "date": ["2013"],
      "location": ["Philippines"], "motivation": "Not enough information", "claimed_date": "2020",
      "claimed_location": "Not enough information", "claimant": "Facebook page", "claimant_motivation":
      "Not enough information", "image_type": "Out-of-context"})"});
    auto out = extract_annotations(article("US plane photo", kPlanePrompt), chat, AnnotationPrompts::shipped());
    ASSERT_TRUE(out.annotation) << out.error;
    const auto& a = *out.annotation;
    EXPECT_EQ(a.answers.date, std::vector<DateValue>{DateValue::y(2013)});
    ASSERT_EQ(a.answers.location.size(), 1u);
    EXPECT_EQ(a.answers.location[0].text, "Philippines");
    EXPECT_EQ(a.answers.provenance, Provenance::yes);
    EXPECT_FALSE(a.answers.source);
    EXPECT_EQ(a.claimed.claimed_date, DateValue::y(2020));
    EXPECT_EQ(a.claimed.claimant, "Facebook page");
    EXPECT_EQ(a.image_type, ImageType::out_of_context);
    EXPECT_EQ(out.attempts, 1);

    ASSERT_EQ(chat.requests.size(), 1u);
    const auto& text = chat.requests[0].messages[0].text;
    EXPECT_NE(text.find("You are an assistant helping fact-checkers"), std::string::npos);
    EXPECT_NE(text.find(kPlanePrompt), std::string::npos);
    EXPECT_NE(text.find("March 4, 2021"), std::string::npos);
}

TEST(ExtractAnnotations, SentinelsMapToAbsent) {
    Json j;
    for (auto k : {"provenance", "source", "date", "location", "motivation", "claimed_date", "claimant", "image_type"})
        j[k] = "Not enough information";
    auto a = annotation_from_json(j);
    EXPECT_TRUE(a.answers.all_absent());
    EXPECT_EQ(a.answers.provenance, Provenance::unknown);
    EXPECT_FALSE(a.claimed.claimant);
    EXPECT_FALSE(a.image_type);
    EXPECT_TRUE(annotation_from_json(Json::object()).answers.all_absent());
    EXPECT_THROW(annotation_from_json(Json::array()), std::invalid_argument);
}

TEST(ExtractAnnotations, ListsBecomeValuesOrJoinedStrings) {
    auto a = annotation_from_json(Json::parse(R"({"date": ["2013", "2014"], "location": ["Manila", "Cebu"],
      "source": ["Reuters", "Not enough information", "AP"], "motivation": ["To document", "to report"]})"));
    EXPECT_EQ(a.answers.date, (std::vector<DateValue>{DateValue::y(2013), DateValue::y(2014)}));
    ASSERT_EQ(a.answers.location.size(), 2u);
    EXPECT_EQ(a.answers.location[1].text, "Cebu");
    EXPECT_EQ(a.answers.source, "Reuters, AP");
    EXPECT_EQ(a.answers.motivation, "To document, to report");
}

TEST(ExtractAnnotations, OneRepairRetryThenFailure) {
    ScriptedChat fixed({"Here you go!", "```json\n{\"source\": \"AFP\"}\n```"});
    auto ok = extract_annotations(article("t1", "body"), fixed, AnnotationPrompts::shipped());
    ASSERT_TRUE(ok.annotation);
    EXPECT_EQ(ok.annotation->answers.source, "AFP");
    EXPECT_EQ(ok.attempts, 2);
    ASSERT_EQ(fixed.requests.size(), 2u);
    ASSERT_EQ(fixed.requests[1].messages.size(), 3u);
    EXPECT_EQ(fixed.requests[1].messages[1].text, "Here you go!");
    EXPECT_NE(fixed.requests[1].messages[2].text.find("Your previous reply was not valid JSON"), std::string::npos);

    ScriptedChat broken({"no json here"});
    auto bad = extract_annotations(article("t2", "body"), broken, AnnotationPrompts::shipped());
    EXPECT_FALSE(bad.annotation);
    EXPECT_EQ(bad.attempts, 2);
    EXPECT_EQ(broken.requests.size(), 2u);
    EXPECT_NE(bad.error.find("not JSON"), std::string::npos);

    ScriptedChat down({""});
    down.throw_error = true;
    auto err = extract_annotations(article("t3", "body"), down, AnnotationPrompts::shipped());
    EXPECT_FALSE(err.annotation);
    EXPECT_NE(err.error.find("connection refused"), std::string::npos);
}

TEST(ParseJsonReply, FindsTheObjectInsideProse) {
    EXPECT_EQ(parse_json_reply(R"(Sure: {"a": "}"} thanks)")->at("a"), "}");
    EXPECT_FALSE(parse_json_reply("[1, 2]"));
    EXPECT_FALSE(parse_json_reply("{broken"));
}

// ---- strategies ----

TEST(DetectVerificationStrategy, DictionaryExamples) {
    const auto d = StrategyDictionary::shipped();
    auto ris = d.detect("A reverse image search led us to the original.");
    EXPECT_EQ(ris.strategies, std::set{VerificationStrategy::reverse_image_search});
    EXPECT_FALSE(ris.tools.count("google"));
    auto yandex = d.detect("Yandex Images search revealed an older copy.");
    EXPECT_TRUE(yandex.tools.count("yandex"));
    auto geo = d.detect("We geolocated the bridge and ran a keyword search.");
    EXPECT_EQ(geo.strategies, (std::set{VerificationStrategy::keyword_search, VerificationStrategy::geolocation}));
    auto none = d.detect("Nothing to see.");
    EXPECT_TRUE(none.strategies.empty());
    EXPECT_TRUE(none.tools.empty());
}

TEST(DetectVerificationStrategy, RejectsMalformedDictionaries) {
    EXPECT_THROW(StrategyDictionary::parse("foo\n"), std::invalid_argument);
    EXPECT_THROW(StrategyDictionary::parse("foo\tmagic\n"), std::invalid_argument);
    EXPECT_EQ(StrategyDictionary::parse("# c\n\nfoo\tother\ttool\n").entries().size(), 1u);
}

// ---- filters ----

TEST(LanguageFilter, SeparatesEnglishFromOtherLanguages) {
    EXPECT_TRUE(looks_english("A photo of a derailed train is being shared as a recent accident. A reverse image "
                              "search using Google led us to a news report from 2015 in Odisha, India."));
    EXPECT_FALSE(looks_english("Une photo de la manifestation est partagee avec une fausse affirmation. La photo a "
                               "ete prise a Paris en 2016 lors d'une manifestation contre la reforme du travail."));
    EXPECT_FALSE(looks_english("Ein Foto der Demonstration wird mit einer falschen Behauptung geteilt. Das Bild "
                               "wurde in Berlin aufgenommen."));
    EXPECT_FALSE(looks_english("\xe0\xb2\x88 \xe0\xb2\x9a\xe0\xb2\xbf\xe0\xb2\xa4\xe0\xb3\x8d\xe0\xb2\xb0 "
                               "\xe0\xb2\xb9\xe0\xb2\xb3\xe0\xb3\x86\xe0\xb2\xaf\xe0\xb2\xa6\xe0\xb3\x81 and more"));
    EXPECT_FALSE(looks_english("The photo"));  // too short to judge
}

TEST(LanguageFilter, IsIdempotentOverArticles) {
    std::vector<std::string> texts{"Le pont s'est effondre a Mumbai en 2017 selon les journaux locaux du matin.",
                                   "The bridge collapsed in Mumbai in 2017 according to the local morning papers.",
                                   "short"};
    std::vector<std::string> once;
    for (const auto& t : texts)
        if (looks_english(t)) once.push_back(t);
    std::vector<std::string> twice;
    for (const auto& t : once)
        if (looks_english(t)) twice.push_back(t);
    EXPECT_EQ(once, twice);
    EXPECT_EQ(once.size(), 1u);
}

TEST(DuplicateFilter, SameTitleOnAnotherDomainKeepsTheEarliest) {
    auto a = article("Edited image of parliament", "x");
    a.url = "https://pesacheck.org/p";
    a.publication_date = DateValue::ymd(2022, 1, 20);
    a.image_url = "https://pesacheck.org/1.jpg";
    auto b = article("Edited  IMAGE of parliament!", "x");
    b.url = "https://factly.in/p";
    b.publication_date = DateValue::ymd(2022, 1, 15);
    b.image_url = "https://factly.in/2.jpg";
    std::vector<DuplicateOf> dropped;
    EXPECT_EQ(find_cross_domain_duplicates({a, b}, &dropped), std::vector<std::size_t>{1});
    ASSERT_EQ(dropped.size(), 1u);
    EXPECT_EQ(dropped[0].url, a.url);
    EXPECT_EQ(dropped[0].kept_url, b.url);
}

TEST(DuplicateFilter, SameDomainAndSharedImagesAcrossDomains) {
    auto a = article("Flood photo", "x");
    a.url = "https://factly.in/1";
    auto b = article("Flood photo", "x");
    b.url = "https://factly.in/2";
    EXPECT_EQ(find_cross_domain_duplicates({a, b}, nullptr).size(), 2u);
    auto c = article("Completely different title", "x");
    c.url = "https://211check.org/3";
    c.image_url = a.image_url;
    c.publication_date = DateValue::ymd(2023, 1, 1);
    EXPECT_EQ(find_cross_domain_duplicates({a, c}, nullptr), std::vector<std::size_t>{0});
}

TEST(SlugId, UsesTheLastPathSegment) {
    EXPECT_EQ(slug_id("https://factly.in/fake-news/old-photo-of-train-accident/"), "old-photo-of-train-accident");
    EXPECT_EQ(slug_id("https://x.org/A_B%20c?x=1#y"), "a-b-20c");
    EXPECT_EQ(slug_id("https://x.org/"), "x-org");
    EXPECT_EQ(slug_id("https://x.org/" + std::string(200, 'a')).size(), 80u);
}

// ---- end to end ----

TEST(BuildCorpus, FixtureSixArticlesGiveFourCases) {
    evidence::FixtureFetcher f(kFixtures / "web");
    BuildBackends b{suite().archive.get(), &f, suite().chat.get()};
    auto r = build_corpus(fixture_options(), b);

    std::vector<std::string> ids;
    for (const auto& c : r.cases) ids.push_back(c.id);
    EXPECT_EQ(ids, (std::vector<std::string>{"edited-image-of-parliament", "old-photo-of-train-accident",
                                             "photo-of-cattle-raid-is-from-2017", "picture-of-bridge-collapse-is-old"}));
    EXPECT_EQ(r.report.candidates, 6u);
    EXPECT_TRUE(r.report.balanced());
    const auto reasons = r.report.drops_by_reason();
    EXPECT_EQ(reasons, (std::map<std::string, std::size_t>{{"duplicate", 1}, {"language", 1}}));
    for (const auto& d : r.report.drops) {
        if (d.reason == "language") EXPECT_EQ(d.url, "https://factly.in/fake-news/photo-de-manifestation-a-paris/");
        if (d.reason == "duplicate") EXPECT_EQ(d.url, "https://pesacheck.org/edited-image-of-parliament-shared-again");
    }

    // The bridge article is only annotated after the repair retry.
    const auto& bridge = r.cases[3];
    EXPECT_EQ(bridge.gold.date, (std::vector<DateValue>{DateValue::y(2017), DateValue::y(2018)}));
    EXPECT_EQ(bridge.gold.source, "Press Trust, Local reporters");
    EXPECT_EQ(bridge.verification_strategies, std::set{VerificationStrategy::keyword_search});
    EXPECT_EQ(bridge.split, Split::val);
    EXPECT_EQ(r.cases[2].split, Split::test);
    EXPECT_EQ(r.report.tool_counts.at("yandex"), 1u);

    auto path = temp_dir("build") / "corpus.jsonl";
    save_corpus(path, r.cases);
    auto loaded = load_corpus(path);
    EXPECT_TRUE(loaded.errors.empty());
    EXPECT_EQ(loaded.cases, r.cases);
}

TEST(BuildCorpus, AttritionBalancesWithFailuresAndExclusions) {
    evidence::FixtureFetcher f(kFixtures / "web");
    ScriptedChat chat({R"({"source": "Not enough information"})"});
    BuildBackends b{suite().archive.get(), &f, &chat};
    auto opts = fixture_options();
    opts.harvest.domains.push_back("offline.example");
    opts.excluded_urls = {"https://211check.org/photo-of-cattle-raid-is-from-2017/"};
    auto r = build_corpus(opts, b);
    EXPECT_TRUE(r.cases.empty());
    EXPECT_TRUE(r.report.balanced());
    EXPECT_EQ(r.report.domain_failures.size(), 1u);
    const auto reasons = r.report.drops_by_reason();
    EXPECT_EQ(reasons.at("excluded"), 1u);
    EXPECT_EQ(reasons.at("no_answers"), 3u);
    auto j = to_json(r.report);
    EXPECT_EQ(j["candidates"], 6);
    EXPECT_NE(render_build_report(r.report).find("offline.example"), std::string::npos);
}

TEST(BuildCorpus, ResumesFromCacheWithoutNewAnnotationCalls) {
    auto dir = temp_dir("build-cache");
    evidence::EvidenceCache cache(dir);
    evidence::FixtureFetcher f(kFixtures / "web");
    CountingChat chat(*suite().chat);
    BuildBackends b{suite().archive.get(), &f, &chat};
    auto opts = fixture_options();
    opts.cache = &cache;

    auto first = build_corpus(opts, b);
    const int calls = chat.calls;
    const auto fetches = f.calls();
    EXPECT_GT(calls, 0);
    auto second = build_corpus(opts, b);
    EXPECT_EQ(chat.calls, calls);
    EXPECT_EQ(second.cases, first.cases);
    EXPECT_LT(f.calls() - fetches, fetches);
}
