#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pillars/core/date.hpp"

namespace pillars::evidence {

struct ExtractedPage {
    std::optional<std::string> title;
    std::optional<std::string> description;
    std::optional<std::string> author;
    std::optional<std::string> sitename;
    std::optional<DateValue> publication_date;
    std::string body_text;
    std::vector<std::string> image_urls;
    std::vector<std::string> image_captions;
};

/// Metadata from meta tags, JSON-LD and <time>; main text from the
/// article (or main, or body) with navigation, asides, footers and
/// link-dense blocks removed. Absent when the input holds neither text nor a
/// title, which callers report as an extraction error.
std::optional<ExtractedPage> extract_page(std::string_view html, std::string_view page_url);

/// Resolves `ref` against `base`; empty for data: and javascript: refs.
std::string resolve_url(std::string_view base, std::string_view ref);

}  // namespace pillars::evidence
