#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pillars::strings {

std::string_view trim(std::string_view s);
std::string lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);
bool starts_with_ci(std::string_view s, std::string_view prefix);
std::vector<std::string> split(std::string_view s, std::string_view delims, bool skip_empty = true);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
/// Collapses runs of whitespace into single spaces and trims.
std::string collapse_whitespace(std::string_view s);

/// Lowercase, punctuation replaced by spaces, whitespace split. Bytes >= 0x80
/// are kept as word characters so UTF-8 text tokenizes by whitespace.
std::vector<std::string> normalize_tokens(std::string_view text);

/// First `n` whitespace-delimited tokens of `text`, joined by single spaces.
std::string first_tokens(std::string_view text, std::size_t n);
std::size_t count_tokens(std::string_view text);

}  // namespace pillars::strings
