#include "pillars/core/resources.hpp"

#include <cstdlib>

namespace pillars {

std::filesystem::path resource_dir() {
    if (const char* env = std::getenv("PILLARS_RESOURCE_DIR"); env && *env) return env;
    return PILLARS_BUILTIN_RESOURCE_DIR;
}

}  // namespace pillars
