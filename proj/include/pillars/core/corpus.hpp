#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pillars/core/types.hpp"

namespace pillars {

struct RecordError {
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct CorpusLoad {
    std::vector<ImageCase> cases;
    std::vector<RecordError> errors;
};

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads line-delimited JSON. Malformed or invalid records are collected in
/// `errors` with their line number; an unreadable file throws CorpusError.
/// Blank lines are skipped. Duplicate ids are record errors.
CorpusLoad load_corpus(const std::filesystem::path& path);
CorpusLoad parse_corpus(std::string_view text);

/// Writes one compact JSON object per line through a temp file and rename.
void save_corpus(const std::filesystem::path& path, const std::vector<ImageCase>& cases);
std::string serialize_corpus(const std::vector<ImageCase>& cases);

struct SplitReport {
    std::map<Split, std::size_t> counts;
    std::vector<std::string> warnings;

    double proportion(Split s) const;
};

/// Assigns each case to the first split whose (inclusive) end date is not
/// before the case's fact-check date. Dates past test_end go to test with a
/// warning.
std::vector<ImageCase> assign_splits(std::vector<ImageCase> cases, const SplitSpec& spec,
                                      SplitReport* report = nullptr);

Split split_for(const DateValue& fc_date, const SplitSpec& spec);

}  // namespace pillars
