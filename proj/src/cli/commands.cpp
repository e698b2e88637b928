#include "pillars/cli/commands.hpp"

#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pillars/builder/build.hpp"
#include "pillars/cli/services.hpp"
#include "pillars/core/atomic_file.hpp"
#include "pillars/core/corpus.hpp"
#include "pillars/core/strings.hpp"
#include "pillars/geo/gazetteer.hpp"
#include "pillars/metrics/report.hpp"
#include "pillars/pipeline/rank_eval.hpp"

namespace pillars::cli {

namespace {

struct Flags {
    std::string config;
    bool mock = false;
    std::string backend_url;
    std::string cache_dir;
    bool no_cache = false;
    bool quiet = false;
    std::optional<unsigned> threads;

    std::string split = "test";
    std::optional<std::string> modality, ranking, manipulation_mode, prompt_style, model;
    std::optional<int> shots, top_k, repeat_runs;
    std::optional<std::int64_t> seed;
    std::optional<double> temperature;

    std::string out;
    std::vector<std::string> results;
    std::vector<std::string> reports;
    bool json = false;
    int abort_after = 0;
};

template <class T, class Parse>
void apply_enum(const std::optional<std::string>& flag, T& target, Parse parse, const char* what) {
    if (!flag) return;
    auto v = parse(*flag);
    if (!v) throw ConfigError(fmt::format("unknown {} '{}'", what, *flag));
    target = *v;
}

AppConfig resolve_config(const Flags& f) {
    AppConfig c;
    if (!f.config.empty()) c = load_app_config(f.config);
    if (f.mock) c.mock = true;
    if (!f.backend_url.empty()) {
        c.backend_url = f.backend_url;
        c.endpoints.clear();
        c.mock = false;
    }
    if (!f.cache_dir.empty()) c.cache_dir = f.cache_dir;
    if (f.no_cache) c.use_cache = false;
    if (f.threads) c.threads = *f.threads;
    apply_enum(f.modality, c.run.modality, pipeline::parse_modality, "modality");
    apply_enum(f.ranking, c.run.ranking, pipeline::parse_ranking, "ranking");
    apply_enum(f.manipulation_mode, c.run.manipulation_mode, pipeline::parse_manipulation_mode, "manipulation mode");
    apply_enum(f.prompt_style, c.run.prompt_style, pipeline::parse_prompt_style, "prompt style");
    if (f.model) c.run.model = *f.model;
    if (f.shots) c.run.shots = *f.shots;
    if (f.top_k) c.run.top_k = *f.top_k;
    if (f.temperature) c.run.temperature = *f.temperature;
    if (f.seed) c.run.seed = *f.seed;
    if (f.repeat_runs) c.repeat_runs = *f.repeat_runs;
    return c;
}

Split parse_split_flag(const std::string& s) {
    auto v = parse_split(s);
    if (!v) throw ConfigError("unknown split '" + s + "'");
    return *v;
}

std::vector<ImageCase> load_cases(const AppConfig& c, std::ostream& err, bool quiet) {
    auto load = load_corpus(c.corpus);
    for (const auto& e : load.errors)
        if (!quiet) err << fmt::format("warning: {}:{}: {}\n", c.corpus.string(), e.line, e.message);
    return load.cases;
}

pipeline::PipelineContext make_context(const AppConfig& c, const std::vector<ImageCase>& corpus,
                                        const evidence::EvidenceCache* cache) {
    pipeline::PipelineContext ctx;
    ctx.cfg = c.run;
    ctx.retrieval.max_urls = c.max_urls;
    ctx.retrieval.strict_undated = c.strict_undated;
    if (!c.blocklist.empty()) ctx.blocklist = evidence::Blocklist::load_file(c.blocklist);
    ctx.image_root = c.image_root;
    ctx.cache = cache;
    for (const auto& k : corpus)
        if (k.split == Split::train) ctx.train.push_back(k);
    ctx.retry = {c.retry_attempts, std::chrono::milliseconds(c.retry_delay_ms), 2.0};
    ctx.scrape_threads = c.scrape_threads;
    return ctx;
}

void require(bool ok, const char* what) {
    if (!ok) throw ConfigError(fmt::format("no {} backend: pass --mock or --backend-url", what));
}

metrics::RunDescriptor descriptor(const AppConfig& c, const std::string& split) {
    return {c.run.model,
            std::string(pipeline::to_string(c.run.modality)),
            c.run.shots,
            std::string(pipeline::to_string(c.run.ranking)),
            std::string(pipeline::to_string(c.run.manipulation_mode)),
            split};
}

std::string results_text(const std::vector<CaseResult>& results) {
    std::string s;
    for (const auto& r : results) s += dump_line(to_json(r)) + "\n";
    return s;
}

std::vector<CaseResult> read_results(const std::filesystem::path& p) {
    auto text = read_file(p);
    if (!text) throw ConfigError("cannot read results " + p.string());
    std::vector<CaseResult> out;
    std::size_t line_no = 0;
    for (auto line : strings::split(*text, "\n", false)) {
        ++line_no;
        if (strings::trim(line).empty()) continue;
        try {
            out.push_back(result_from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(fmt::format("{}:{}: {}", p.string(), line_no, e.what()));
        }
    }
    return out;
}

struct Scoring {
    std::optional<geo::Gazetteer> gazetteer;
    metrics::ScoreOptions opts;
};

void prepare_scoring(Scoring& s, const AppConfig& c, Services& services) {
    if (!c.gazetteer.empty()) {
        s.gazetteer = geo::Gazetteer::ingest(c.gazetteer);
        s.opts.gazetteer = &*s.gazetteer;
    }
    s.opts.scorer = services.scorer.get();
}

void write_report(const std::filesystem::path& dir, const metrics::MetricReport& report) {
    write_file_atomic(dir / "report.json", to_json(report).dump(2) + "\n");
    write_file_atomic(dir / "report.txt", metrics::render_table({report}));
}

// ---- commands ----

int cmd_run(const Flags& f, std::ostream& out, std::ostream& err) {
    auto c = resolve_config(f);
    validate(c, {.corpus = true});
    const auto split = parse_split_flag(f.split);
    if (f.out.empty()) throw ConfigError("run needs --out");
    auto services = make_services(c);
    require(services.chat != nullptr, "chat");
    if (c.run.modality != pipeline::Modality::image_only) {
        require(services.ris && services.fetcher, "retrieval");
        if (c.run.ranking == pipeline::Ranking::embedding) require(services.embed != nullptr, "embedding");
    }
    if (c.run.shots > 0) require(services.embed != nullptr, "embedding");
    if (c.run.manipulation_mode == pipeline::ManipulationMode::detector) require(services.classifier != nullptr, "classifier");

    const auto corpus = load_cases(c, err, f.quiet);
    std::optional<evidence::EvidenceCache> cache;
    if (c.use_cache) cache.emplace(c.cache_dir);
    auto ctx = make_context(c, corpus, cache ? &*cache : nullptr);
    auto backends = services.pipeline();
    Scoring scoring;
    prepare_scoring(scoring, c, services);

    const std::filesystem::path dir(f.out);
    std::filesystem::create_directories(dir);
    const std::int64_t base_seed = c.run.seed.value_or(0);
    std::vector<metrics::MetricReport> reports;
    int finished = 0;
    for (int r = 0; r < c.repeat_runs; ++r) {
        ctx.cfg.seed = base_seed + r;
        std::size_t total = 0;
        for (const auto& k : corpus) total += k.split == split;
        std::size_t done = 0;
        pipeline::SplitRunOptions opts;
        opts.threads = c.threads;
        opts.on_case_done = [&](const CaseResult& res, bool from_cache) {
            ++done;
            if (!f.quiet)
                err << fmt::format("run {}/{}: {} ({}/{}){}\n", r + 1, c.repeat_runs, res.case_id, done, total,
                                   from_cache ? " cached" : "");
            if (!from_cache && f.abort_after > 0 && ++finished >= f.abort_after) {
                err.flush();
                std::_Exit(137);
            }
        };
        auto results = pipeline::run_split(corpus, split, ctx, backends, opts);
        write_file_atomic(dir / fmt::format("results-{}.jsonl", r + 1), results_text(results));
        reports.push_back(metrics::score_run(results, corpus, scoring.opts, descriptor(c, f.split)));
    }
    auto report = metrics::aggregate_runs(reports);
    Json manifest{{"run", pipeline::to_json(ctx.cfg)}, {"split", f.split}, {"repeat_runs", c.repeat_runs},
                  {"base_seed", base_seed}, {"corpus", c.corpus.filename().string()}};
    manifest["run"]["seed"] = base_seed;
    write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
    write_report(dir, report);
    out << metrics::render_table({report});
    return 0;
}

int cmd_evaluate(const Flags& f, std::ostream& out, std::ostream& err) {
    auto c = resolve_config(f);
    validate(c, {.corpus = true});
    if (f.results.empty()) throw ConfigError("evaluate needs --results");
    auto services = make_services(c);
    Scoring scoring;
    prepare_scoring(scoring, c, services);
    const auto corpus = load_cases(c, err, f.quiet);
    std::vector<metrics::MetricReport> reports;
    for (const auto& p : f.results)
        reports.push_back(metrics::score_run(read_results(p), corpus, scoring.opts, descriptor(c, f.split)));
    auto report = metrics::aggregate_runs(reports);
    if (!f.out.empty()) {
        std::filesystem::create_directories(f.out);
        write_report(f.out, report);
    }
    if (f.json) out << to_json(report).dump(2) << "\n";
    else out << metrics::render_table({report});
    return 0;
}

int cmd_report(const Flags& f, std::ostream& out) {
    if (f.reports.empty()) throw ConfigError("report needs --reports");
    std::vector<metrics::MetricReport> rows;
    Json all = Json::array();
    for (const auto& p : f.reports) {
        auto text = read_file(p);
        if (!text) throw ConfigError("cannot read report " + p);
        auto j = Json::parse(*text);
        rows.push_back(metrics::report_from_json(j));
        all.push_back(std::move(j));
    }
    if (f.json) out << all.dump(2) << "\n";
    else out << metrics::render_table(rows);
    return 0;
}

int cmd_rank_eval(const Flags& f, std::ostream& out, std::ostream& err) {
    auto c = resolve_config(f);
    validate(c, {.corpus = true});
    const auto split = parse_split_flag(f.split);
    auto services = make_services(c);
    require(services.ris && services.fetcher, "retrieval");
    require(services.embed != nullptr, "embedding");
    const auto corpus = load_cases(c, err, f.quiet);
    std::optional<evidence::EvidenceCache> cache;
    if (c.use_cache) cache.emplace(c.cache_dir);
    auto ctx = make_context(c, corpus, cache ? &*cache : nullptr);
    auto backends = services.pipeline();
    auto eval = pipeline::evaluate_rankings(corpus, split, ctx, backends, c.threads);
    for (const auto& w : eval.warnings)
        if (!f.quiet) err << "warning: " << w << "\n";
    if (!f.out.empty()) {
        std::filesystem::create_directories(f.out);
        write_file_atomic(std::filesystem::path(f.out) / "ranking.json", to_json(eval).dump(2) + "\n");
        write_file_atomic(std::filesystem::path(f.out) / "ranking.txt", pipeline::render_ranking_table(eval));
    }
    if (f.json) out << to_json(eval).dump(2) << "\n";
    else out << pipeline::render_ranking_table(eval);
    return 0;
}

int cmd_retrieve(const Flags& f, std::ostream& out, std::ostream& err) {
    auto c = resolve_config(f);
    validate(c, {.corpus = true});
    auto services = make_services(c);
    require(services.ris && services.fetcher, "retrieval");
    const auto corpus = load_cases(c, err, f.quiet);
    std::optional<evidence::EvidenceCache> cache;
    if (c.use_cache) cache.emplace(c.cache_dir);
    auto ctx = make_context(c, corpus, cache ? &*cache : nullptr);
    auto backends = services.pipeline();

    std::vector<const ImageCase*> todo;
    const bool all = f.split == "all";
    const auto split = all ? Split::test : parse_split_flag(f.split);
    for (const auto& k : corpus)
        if (all || k.split == split) todo.push_back(&k);
    std::string lines;
    std::string table = fmt::format("{:<36}{:>8}{:>8}{:>8}{:>8}\n", "case", "ris", "scraped", "kept", "usable");
    for (const auto* k : todo) {
        auto r = pipeline::retrieve_evidence(k->image_ref, k->fc_publication_date, ctx, backends);
        const auto usable = r.usable();
        Json j{{"case_id", k->id}, {"ris", r.ris.size()}, {"scraped", r.scraped.size()},
               {"surviving", r.surviving.size()}, {"usable", Json::array()}, {"errors", Json::array()}};
        for (const auto& e : usable) j["usable"].push_back(e.url);
        for (const auto& e : r.errors) j["errors"].push_back(e.stage + ": " + e.detail);
        lines += dump_line(j) + "\n";
        table += fmt::format("{:<36}{:>8}{:>8}{:>8}{:>8}\n", k->id, r.ris.size(), r.scraped.size(), r.surviving.size(),
                             usable.size());
    }
    if (!f.out.empty()) {
        std::filesystem::create_directories(f.out);
        write_file_atomic(std::filesystem::path(f.out) / "retrieval.jsonl", lines);
    }
    out << (f.json ? lines : table);
    return 0;
}

int cmd_build_corpus(const Flags& f, std::ostream& out, std::ostream&) {
    auto c = resolve_config(f);
    validate(c, {});
    if (f.out.empty()) throw ConfigError("build-corpus needs --out (corpus file to write)");
    if (c.harvest.domains.empty()) throw ConfigError("build.domains is empty");
    auto services = make_services(c);
    require(services.archive != nullptr, "archive");
    require(services.chat != nullptr, "annotation chat");
    require(services.fetcher != nullptr, "web fetcher");

    builder::BuildOptions opts;
    opts.harvest = c.harvest;
    opts.threads = c.scrape_threads;
    if (c.exclusions) {
        auto text = read_file(*c.exclusions);
        if (!text) throw ConfigError("cannot read exclusions " + c.exclusions->string());
        for (auto line : strings::split(*text, "\n"))
            if (auto t = strings::trim(line); !t.empty() && t.front() != '#') opts.excluded_urls.emplace(t);
    }
    std::optional<evidence::EvidenceCache> cache;
    if (c.use_cache) cache.emplace(c.cache_dir);
    opts.cache = cache ? &*cache : nullptr;
    builder::BuildBackends b{services.archive.get(), services.fetcher.get(), services.chat.get()};
    auto result = builder::build_corpus(opts, b);

    const std::filesystem::path path(f.out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    save_corpus(path, result.cases);
    auto base = path;
    base.replace_extension();
    write_file_atomic(base.string() + ".report.json", to_json(result.report).dump(2) + "\n");
    out << builder::render_build_report(result.report);
    return 0;
}

std::string one_line(std::string s) {
    for (char& ch : s)
        if (ch == '\n' || ch == '\r') ch = ' ';
    return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pillars: image contextualization baseline and evaluation"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "JSON config file")->envname("PILLARS_CONFIG");
        sub->add_flag("--mock", f.mock, "Use the in-process fixture mocks")->envname("PILLARS_MOCK");
        sub->add_option("--backend-url", f.backend_url, "Model adapter root URL")->envname("PILLARS_BACKEND_URL");
        sub->add_option("--cache-dir", f.cache_dir, "Artifact cache directory")->envname("PILLARS_CACHE_DIR");
        sub->add_flag("--no-cache", f.no_cache, "Disable the artifact cache");
        sub->add_option("--threads", f.threads, "Worker threads")->envname("PILLARS_THREADS");
        sub->add_flag("-q,--quiet", f.quiet, "No progress output");
        sub->add_option("--out", f.out, "Output location")->envname("PILLARS_OUT");
    };
    auto run_flags = [&](CLI::App* sub) {
        sub->add_option("--split", f.split, "train, val or test")->envname("PILLARS_SPLIT");
        sub->add_option("--modality", f.modality, "image_only, text_only or multimodal")->envname("PILLARS_MODALITY");
        sub->add_option("--shots", f.shots, "Demonstrations (0-2)")->envname("PILLARS_SHOTS");
        sub->add_option("--top-k", f.top_k, "Evidence items in the prompt")->envname("PILLARS_TOP_K");
        sub->add_option("--ranking", f.ranking, "embedding or time")->envname("PILLARS_RANKING");
        sub->add_option("--manipulation-mode", f.manipulation_mode,
                        "no_detector, detector, perfect_detector or oracle")
            ->envname("PILLARS_MANIPULATION_MODE");
        sub->add_option("--prompt-style", f.prompt_style, "gpt4, llava or llama2")->envname("PILLARS_PROMPT_STYLE");
        sub->add_option("--model", f.model, "Model name recorded in reports")->envname("PILLARS_MODEL");
        sub->add_option("--temperature", f.temperature)->envname("PILLARS_TEMPERATURE");
        sub->add_option("--seed", f.seed, "Base seed; repeat i uses seed+i")->envname("PILLARS_SEED");
        sub->add_option("--repeat-runs", f.repeat_runs, "Repeat runs")->envname("PILLARS_REPEAT_RUNS");
    };

    auto* run = app.add_subcommand("run", "Run the pipeline on a split and score it");
    common(run);
    run_flags(run);
    run->add_option("--abort-after", f.abort_after)->group("");

    auto* evaluate = app.add_subcommand("evaluate", "Score existing results files");
    common(evaluate);
    run_flags(evaluate);
    evaluate->add_option("--results", f.results, "results-N.jsonl files (repeat runs)")->required();
    evaluate->add_flag("--json", f.json, "Print JSON");

    auto* report = app.add_subcommand("report", "Render metric reports as one table");
    report->add_option("--reports", f.reports, "report.json files")->required();
    report->add_flag("--json", f.json, "Print JSON");

    auto* rank = app.add_subcommand("rank-eval", "nDCG of embedding and time ranking");
    common(rank);
    rank->add_option("--split", f.split, "train, val or test")->envname("PILLARS_SPLIT");
    rank->add_flag("--json", f.json, "Print JSON");

    auto* retrieve = app.add_subcommand("retrieve", "Reverse image search and scraping only (fills the cache)");
    common(retrieve);
    retrieve->add_option("--split", f.split, "train, val, test or all")->envname("PILLARS_SPLIT");
    retrieve->add_flag("--json", f.json, "Print JSON lines");

    auto* build = app.add_subcommand("build-corpus", "Harvest, scrape and annotate fact-checking articles");
    common(build);

    std::vector<const char*> argv{"pillars"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "pillars: error: " << one_line(e.what()) << "\n";
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(f, out, err);
        if (evaluate->parsed()) return cmd_evaluate(f, out, err);
        if (report->parsed()) return cmd_report(f, out);
        if (rank->parsed()) return cmd_rank_eval(f, out, err);
        if (retrieve->parsed()) return cmd_retrieve(f, out, err);
        if (build->parsed()) return cmd_build_corpus(f, out, err);
    } catch (const ConfigError& e) {
        err << "pillars: error: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "pillars: error: " << one_line(e.what()) << "\n";
        return 1;
    }
    return 1;
}

}  // namespace pillars::cli
