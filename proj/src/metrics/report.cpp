#include "pillars/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "pillars/core/strings.hpp"
#include "pillars/metrics/bert_score.hpp"
#include "pillars/metrics/delta.hpp"
#include "pillars/metrics/location.hpp"
#include "pillars/metrics/text.hpp"

namespace pillars::metrics {

namespace {

struct Column {
    const char* pillar;
    const char* metric;
    const char* header;
};

// Report order; the first thirteen mirror the published results table.
constexpr Column kColumns[] = {
    {"source", "RougeL", "RougeL"},      {"source", "Meteor", "Meteor"},
    {"date", "EM", "EM"},                {"date", "Delta", "Δ"},
    {"location", "RougeL", "RougeL"},    {"location", "Meteor", "Meteor"},
    {"location", "HLDelta", "HLΔ"},      {"location", "CODelta", "COΔ"},
    {"motivation", "RougeL", "RougeL"},  {"motivation", "Meteor", "Meteor"},
    {"motivation", "BertS", "BertS"},    {"date", "EM_month", "EM-m"},
    {"date", "EM_year", "EM-y"},         {"provenance", "Recall", "Prov"},
};

struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
    void add(double v) {
        sum += v;
        ++n;
    }
};

std::string join_locations(const std::vector<LocationValue>& v) {
    std::vector<std::string> parts;
    for (const auto& l : v) parts.push_back(l.text);
    return strings::join(parts, ", ");
}

}  // namespace

const MetricEntry* MetricReport::find(std::string_view pillar, std::string_view metric) const {
    for (const auto& m : metrics)
        if (m.pillar == pillar && m.metric == metric) return &m;
    return nullptr;
}

std::optional<double> provenance_recall(const std::vector<std::pair<Provenance, bool>>& cases) {
    std::size_t yes = 0, hit = 0;
    for (auto [gold, has] : cases) {
        if (gold != Provenance::yes) continue;
        ++yes;
        if (has) ++hit;
    }
    if (yes == 0) return std::nullopt;
    return double(hit) / double(yes);
}

std::optional<double> provenance_recall(const std::vector<std::pair<Provenance, std::vector<EvidenceItem>>>& cases) {
    std::vector<std::pair<Provenance, bool>> flat;
    for (const auto& [gold, items] : cases)
        flat.emplace_back(gold, std::any_of(items.begin(), items.end(),
                                            [](const EvidenceItem& e) { return e.scrape_status == ScrapeStatus::ok; }));
    return provenance_recall(flat);
}

MetricReport score_run(const std::vector<CaseResult>& results, const std::vector<ImageCase>& corpus,
                       const ScoreOptions& opts, RunDescriptor run) {
    std::unordered_map<std::string, const ImageCase*> by_id;
    for (const auto& c : corpus) by_id.emplace(c.id, &c);

    std::vector<const CaseResult*> ordered;
    for (const auto& r : results) {
        if (!by_id.count(r.case_id)) throw std::invalid_argument("result for unknown case id '" + r.case_id + "'");
        ordered.push_back(&r);
    }
    std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->case_id < b->case_id; });

    std::map<std::string, Acc> acc;
    std::map<std::string, std::size_t> skipped;
    std::vector<std::pair<Provenance, bool>> prov;
    std::vector<std::string> bert_preds, bert_refs;

    auto text_pair = [&](const char* pillar, const std::string& pred, const std::string& gold) {
        acc[fmt::format("{}.RougeL", pillar)].add(rouge_l(pred, gold));
        acc[fmt::format("{}.Meteor", pillar)].add(meteor(pred, gold));
    };

    for (const auto* r : ordered) {
        const auto& gold = by_id.at(r->case_id)->gold;
        const auto& pred = r->predicted;

        if (gold.source) text_pair("source", pred.source.value_or(""), *gold.source);

        if (!gold.date.empty()) {
            acc["date.EM"].add(date_list_em(pred.date, gold.date, DateGranularity::day));
            acc["date.EM_month"].add(date_list_em(pred.date, gold.date, DateGranularity::month));
            acc["date.EM_year"].add(date_list_em(pred.date, gold.date, DateGranularity::year));
            acc["date.Delta"].add(delta_score(pred.date, gold.date, date_distance));
        }

        if (!gold.location.empty()) {
            text_pair("location", join_locations(pred.location), join_locations(gold.location));
            if (opts.gazetteer) {
                if (auto v = hl_delta(pred.location, gold.location, *opts.gazetteer))
                    acc["location.HLDelta"].add(*v);
                else
                    ++skipped["location.HLDelta"];
            }
            std::vector<LocationValue> p = pred.location, g = gold.location;
            if (opts.gazetteer) {
                for (auto& v : p) v = enrich(v, *opts.gazetteer);
                for (auto& v : g) v = enrich(v, *opts.gazetteer);
            }
            if (auto v = co_delta(p, g))
                acc["location.CODelta"].add(*v);
            else
                ++skipped["location.CODelta"];
        }

        if (gold.motivation) {
            text_pair("motivation", pred.motivation.value_or(""), *gold.motivation);
            bert_preds.push_back(pred.motivation.value_or(""));
            bert_refs.push_back(*gold.motivation);
        }

        prov.emplace_back(gold.provenance, pred.provenance == Provenance::yes);
    }

    if (opts.scorer && !bert_preds.empty())
        for (double s : bert_score(bert_preds, bert_refs, *opts.scorer)) acc["motivation.BertS"].add(s);

    MetricReport rep;
    rep.run = std::move(run);
    rep.cases = ordered.size();
    std::size_t yes_cases = std::count_if(prov.begin(), prov.end(), [](auto& p) { return p.first == Provenance::yes; });
    for (const auto& col : kColumns) {
        MetricEntry e{col.pillar, col.metric, std::nullopt, 0, 0.0};
        const auto key = fmt::format("{}.{}", col.pillar, col.metric);
        if (key == "provenance.Recall") {
            e.mean = provenance_recall(prov);
            e.count = yes_cases;
        } else if (auto it = acc.find(key); it != acc.end() && it->second.n > 0) {
            e.mean = it->second.sum / double(it->second.n);
            e.count = it->second.n;
        }
        rep.metrics.push_back(e);
    }
    for (const auto& col : kColumns) {
        const auto key = fmt::format("{}.{}", col.pillar, col.metric);
        if (auto it = skipped.find(key); it != skipped.end()) rep.skipped.emplace_back(key, it->second);
    }
    return rep;
}

MetricReport aggregate_runs(const std::vector<MetricReport>& runs) {
    if (runs.empty()) throw std::invalid_argument("aggregate_runs: no runs");
    MetricReport out = runs.front();
    out.runs = runs.size();
    for (auto& e : out.metrics) {
        std::vector<double> vals;
        for (const auto& r : runs)
            if (auto m = r.find(e.pillar, e.metric); m && m->mean) vals.push_back(*m->mean);
        if (vals.empty()) {
            e.mean.reset();
            e.stddev = 0.0;
            continue;
        }
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= double(vals.size());
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        e.mean = mean;
        e.stddev = std::sqrt(var / double(vals.size()));
    }
    return out;
}

Json to_json(const MetricReport& r) {
    Json j;
    j["run"] = {{"model", r.run.model},
                {"modality", r.run.modality},
                {"shots", r.run.shots},
                {"ranking", r.run.ranking},
                {"manipulation_mode", r.run.manipulation_mode},
                {"split", r.run.split}};
    j["cases"] = r.cases;
    j["runs"] = r.runs;
    Json metrics = Json::object();
    for (const auto& e : r.metrics) {
        Json m;
        m["mean"] = e.mean ? Json(*e.mean) : Json(nullptr);
        m["count"] = e.count;
        m["std"] = e.stddev;
        metrics[e.pillar][e.metric] = m;
    }
    j["metrics"] = metrics;
    Json sk = Json::object();
    for (const auto& [k, n] : r.skipped) sk[k] = n;
    j["skipped"] = sk;
    return j;
}

MetricReport report_from_json(const Json& j) {
    MetricReport r;
    if (!j.is_object() || !j.contains("metrics")) throw std::invalid_argument("report: missing 'metrics'");
    if (auto it = j.find("run"); it != j.end()) {
        r.run.model = it->value("model", "");
        r.run.modality = it->value("modality", "");
        r.run.shots = it->value("shots", 0);
        r.run.ranking = it->value("ranking", "");
        r.run.manipulation_mode = it->value("manipulation_mode", "");
        r.run.split = it->value("split", "");
    }
    r.cases = j.value("cases", std::size_t{0});
    r.runs = j.value("runs", std::size_t{1});
    for (const auto& [pillar, ms] : j.at("metrics").items())
        for (const auto& [metric, m] : ms.items()) {
            MetricEntry e{pillar, metric, std::nullopt, m.value("count", std::size_t{0}), m.value("std", 0.0)};
            if (m.contains("mean") && m["mean"].is_number()) e.mean = m["mean"].get<double>();
            r.metrics.push_back(e);
        }
    if (auto it = j.find("skipped"); it != j.end())
        for (const auto& [k, n] : it->items()) r.skipped.emplace_back(k, n.get<std::size_t>());
    return r;
}

std::string render_table(const std::vector<MetricReport>& rows) {
    // Display width counts code points so Δ and ± align.
    auto width = [](const std::string& s) {
        std::size_t n = 0;
        for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
        return n;
    };
    auto pad = [&](const std::string& s, std::size_t n, bool left) {
        std::string fill(n > width(s) ? n - width(s) : 0, ' ');
        return left ? s + fill : fill + s;
    };

    std::vector<std::string> header{"Method", "N"};
    for (const auto& c : kColumns) header.emplace_back(c.header);
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        std::string method = r.run.model.empty() ? r.run.modality : r.run.model + " " + r.run.modality;
        std::vector<std::string> line{method, std::to_string(r.run.shots)};
        for (const auto& c : kColumns) {
            const auto* e = r.find(c.pillar, c.metric);
            if (!e || !e->mean)
                line.emplace_back("-");
            else if (r.runs > 1)
                line.push_back(fmt::format("{:.2f}±{:.2f}", *e->mean * 100.0, e->stddev * 100.0));
            else
                line.push_back(fmt::format("{:.2f}", *e->mean * 100.0));
        }
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        w[i] = width(header[i]);
        for (const auto& l : cells) w[i] = std::max(w[i], width(l[i]));
    }

    auto render = [&](const std::vector<std::string>& l, bool all_left = false) {
        std::string line;
        for (std::size_t i = 0; i < l.size(); ++i) line += (i ? " | " : "") + pad(l[i], w[i], all_left || i == 0);
        return line;
    };
    std::vector<std::string> groups{"", ""};
    std::string_view current;
    for (const auto& c : kColumns) {
        std::string label;
        if (current != c.pillar) {
            label = c.pillar;
            label[0] = char(label[0] - 'a' + 'A');
        }
        current = c.pillar;
        groups.push_back(label);
    }
    std::string out = render(groups, true);
    out.erase(out.find_last_not_of(" |") + 1);
    out += "\n";
    const auto head = render(header);
    out += head + "\n" + std::string(width(head), '-') + "\n";
    for (const auto& l : cells) out += render(l) + "\n";
    return out;
}

}  // namespace pillars::metrics
