#include "pillars/builder/strategy.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "pillars/core/atomic_file.hpp"
#include "pillars/core/resources.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::builder {

StrategyDictionary StrategyDictionary::parse(std::string_view text) {
    StrategyDictionary d;
    std::size_t line_no = 0;
    for (auto line : strings::split(text, "\n", false)) {
        ++line_no;
        auto trimmed = strings::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            auto tab = trimmed.find('\t', start);
            cols.emplace_back(strings::trim(trimmed.substr(start, tab == std::string_view::npos ? tab : tab - start)));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (cols.size() < 2 || cols[0].empty())
            throw std::invalid_argument(fmt::format("strategy dictionary line {}: expected phrase<TAB>strategy", line_no));
        auto s = parse_strategy(cols[1]);
        if (!s) throw std::invalid_argument(fmt::format("strategy dictionary line {}: unknown strategy '{}'", line_no, cols[1]));
        d.entries_.push_back({strings::lower(cols[0]), *s, cols.size() > 2 ? strings::lower(cols[2]) : std::string()});
    }
    return d;
}

StrategyDictionary StrategyDictionary::load_file(const std::filesystem::path& path) {
    auto text = read_file(path);
    if (!text) throw std::runtime_error("cannot read " + path.string());
    return parse(*text);
}

StrategyDictionary StrategyDictionary::shipped() { return load_file(resource_dir() / "strategy_keywords.tsv"); }

StrategyMatch StrategyDictionary::detect(std::string_view body_text) const {
    StrategyMatch m;
    const auto lower = strings::lower(body_text);
    for (const auto& e : entries_) {
        if (lower.find(e.phrase) == std::string::npos) continue;
        m.strategies.insert(e.strategy);
        if (!e.tool.empty()) m.tools.insert(e.tool);
    }
    return m;
}

}  // namespace pillars::builder
