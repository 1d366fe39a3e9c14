#pragma once

#include "mfpca/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mfpca {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-4180-ish reader: comma separated, optional double quotes, lines
/// starting with '#' ignored, UTF-8 BOM stripped.
CsvTable read_csv(const std::string& path);

/// One feature stored grid-major: one data row per grid point, one named
/// column per observation. A leading column named "t" supplies the grid.
struct FeatureTable {
  std::vector<std::string> observation_names;
  std::optional<std::vector<double>> grid;
  Matrix values;  // observations x points
};

FeatureTable read_feature_csv(const std::string& path);

}  // namespace mfpca
