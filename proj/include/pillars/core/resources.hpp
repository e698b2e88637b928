#pragma once

#include <filesystem>

namespace pillars {

/// Directory holding shipped data files (blocklist, prompts, dictionaries).
/// PILLARS_RESOURCE_DIR in the environment overrides the build-time path.
std::filesystem::path resource_dir();

}  // namespace pillars
