#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pillars {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

std::string base64_encode(std::string_view data);
/// Absent for malformed input. Line breaks and spaces are ignored.
std::optional<std::string> base64_decode(std::string_view text);

}  // namespace pillars
