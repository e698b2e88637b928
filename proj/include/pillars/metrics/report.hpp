#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/result.hpp"
#include "pillars/core/serialize.hpp"
#include "pillars/geo/gazetteer.hpp"

namespace pillars::metrics {

struct RunDescriptor {
    std::string model;
    std::string modality;
    int shots = 0;
    std::string ranking;
    std::string manipulation_mode;
    std::string split;
};

struct MetricEntry {
    std::string pillar;
    std::string metric;
    /// Absent when no case could be scored (e.g. no scoring backend).
    std::optional<double> mean;
    std::size_t count = 0;
    /// Population std across repeat runs; 0 for a single run.
    double stddev = 0.0;
};

struct MetricReport {
    RunDescriptor run;
    std::size_t cases = 0;
    std::size_t runs = 1;
    std::vector<MetricEntry> metrics;
    /// Cases excluded from a metric, keyed "pillar.metric".
    std::vector<std::pair<std::string, std::size_t>> skipped;

    const MetricEntry* find(std::string_view pillar, std::string_view metric) const;
};

struct ScoreOptions {
    const geo::Gazetteer* gazetteer = nullptr;
    backends::ScoringBackend* scorer = nullptr;
};

/// Fraction of gold-Yes cases with at least one ok evidence item; absent
/// when there is no gold-Yes case.
std::optional<double> provenance_recall(const std::vector<std::pair<Provenance, bool>>& gold_and_has_evidence);
std::optional<double> provenance_recall(const std::vector<std::pair<Provenance, std::vector<EvidenceItem>>>& cases);

/// Scores results against their gold cases. Throws std::invalid_argument
/// for a result id missing from the corpus.
MetricReport score_run(const std::vector<CaseResult>& results, const std::vector<ImageCase>& corpus,
                       const ScoreOptions& opts = {}, RunDescriptor run = {});

/// Mean and population std of each metric across repeat runs.
MetricReport aggregate_runs(const std::vector<MetricReport>& runs);

Json to_json(const MetricReport& r);
MetricReport report_from_json(const Json& j);

/// Aligned text table in percent with two decimals, one row per report,
/// laid out as Source | Date | Location | Motivation column groups followed
/// by the extra EM granularities and Provenance.
std::string render_table(const std::vector<MetricReport>& rows);

}  // namespace pillars::metrics
