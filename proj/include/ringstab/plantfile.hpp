#pragma once

#include <optional>
#include <string>

#include "ringstab/plant.hpp"

namespace ringstab {

/// Parsed plant file: an INI-like sectioned key-value format.
///
///   [ring]        kind = integers | rationals | quadratic_sqrt_minus5 |
///                        polynomial | cuspidal_cubic
///                 variables = x, y        (polynomial kind only)
///   [causality]   ideal = <expr>, <expr>  (optional section)
///   [plant]       inputs = m / outputs = n
///                 N = e11, e12; e21, e22  (rows split by ';')
///                 D = ...
///   [controller]  C = num/den entries, same layout (optional section)
///
/// '#' starts a line comment; expressions follow the grammar in parse.hpp.
struct PlantFile {
  Ring ring;
  Plant plant;
  std::optional<FracMatrix> controller;
};

PlantFile parse_plant_file(const std::string& text);
PlantFile load_plant_file(const std::string& path);

}  // namespace ringstab
