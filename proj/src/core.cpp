#include "wcop/core.hpp"

namespace wcop {

std::string_view to_string(Space space) { return space == Space::Bloch ? "bloch" : "dirichlet"; }

Space space_from_string(std::string_view name) {
    if (name == "bloch") return Space::Bloch;
    if (name == "dirichlet") return Space::Dirichlet;
    throw ConfigError("unknown space '" + std::string(name) + "' (expected bloch or dirichlet)");
}

}  // namespace wcop
