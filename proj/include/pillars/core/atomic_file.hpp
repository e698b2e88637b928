#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace pillars {

/// Writes to a sibling temp file, flushes, then renames over `path`.
/// Parent directories are created. Throws std::runtime_error on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::optional<std::string> read_file(const std::filesystem::path& path);

}  // namespace pillars
