#pragma once

#include <span>
#include <string>
#include <vector>

#include "stylo/code_model.hpp"

namespace stylo {

/// vocabulary, length, difficulty, volume, effort.
MeasureRegistry halstead_registry();

/// Every measure name known to registry_from_names, in a stable order.
std::vector<std::string> known_measure_names();

/// Builds a registry in the given order. Throws std::invalid_argument for
/// unknown names.
MeasureRegistry registry_from_names(std::span<const std::string> names);

/// Splits "a,b,c" and builds the registry.
MeasureRegistry registry_from_list(const std::string& comma_separated);

}  // namespace stylo
