#include "pillars/core/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/serialize.hpp"
#include "pillars/core/strings.hpp"

namespace pillars {

CorpusLoad parse_corpus(std::string_view text) {
    CorpusLoad out;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = strings::trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;

        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            out.errors.push_back({line_no, fmt::format("malformed JSON: {}", e.what())});
            continue;
        }
        try {
            auto c = case_from_json(j);
            if (auto err = c.validate()) {
                out.errors.push_back({line_no, *err});
                continue;
            }
            if (!seen.insert(c.id).second) {
                out.errors.push_back({line_no, fmt::format("duplicate id '{}'", c.id)});
                continue;
            }
            out.cases.push_back(std::move(c));
        } catch (const std::exception& e) {
            out.errors.push_back({line_no, e.what()});
        }
    }
    return out;
}

CorpusLoad load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError(fmt::format("cannot read corpus file '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw CorpusError(fmt::format("error reading corpus file '{}'", path.string()));
    return parse_corpus(ss.str());
}

std::string serialize_corpus(const std::vector<ImageCase>& cases) {
    std::string out;
    for (const auto& c : cases) {
        out += dump_line(to_json(c));
        out += '\n';
    }
    return out;
}

void save_corpus(const std::filesystem::path& path, const std::vector<ImageCase>& cases) {
    write_file_atomic(path, serialize_corpus(cases));
}

double SplitReport::proportion(Split s) const {
    std::size_t total = 0;
    for (const auto& [_, n] : counts) total += n;
    if (total == 0) return 0.0;
    auto it = counts.find(s);
    return it == counts.end() ? 0.0 : double(it->second) / double(total);
}

Split split_for(const DateValue& fc_date, const SplitSpec& spec) {
    auto day = days_since_epoch(fc_date.last_day());
    if (day <= days_since_epoch(spec.train_end)) return Split::train;
    if (day <= days_since_epoch(spec.val_end)) return Split::val;
    return Split::test;
}

std::vector<ImageCase> assign_splits(std::vector<ImageCase> cases, const SplitSpec& spec, SplitReport* report) {
    if (auto err = spec.validate()) throw std::invalid_argument("invalid split spec: " + *err);
    SplitReport local;
    for (auto s : {Split::train, Split::val, Split::test}) local.counts[s] = 0;
    for (auto& c : cases) {
        c.split = split_for(c.fc_publication_date, spec);
        if (days_since_epoch(c.fc_publication_date.last_day()) > days_since_epoch(spec.test_end))
            local.warnings.push_back(fmt::format("case '{}' dated {} is after test end {}; assigned to test", c.id,
                                                 c.fc_publication_date.iso(), spec.test_end.iso()));
        ++local.counts[c.split];
    }
    if (report) *report = std::move(local);
    return cases;
}

}  // namespace pillars
