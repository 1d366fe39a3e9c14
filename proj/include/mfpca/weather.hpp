#pragma once

#include "mfpca/fdata.hpp"
#include "mfpca/mfpca.hpp"
#include "mfpca/numerics.hpp"

#include <string>
#include <vector>

namespace mfpca::weather {

inline constexpr std::size_t kStations = 35;
inline constexpr std::size_t kDays = 365;
inline constexpr std::size_t kSmoothingBasis = 10;
inline constexpr int kSplineDegree = 3;

struct WeatherDataset {
  std::vector<std::string> stations;
  SampledGrid days;     // day of year, 1..365
  Matrix temperature;   // stations x days, deg C
  Matrix precipitation; // stations x days, mm

  MultivariateFunctionalSample sample() const;
};

WeatherDataset load_weather(const std::string& temperature_path,
                            const std::string& precipitation_path,
                            const std::string& stations_path);

/// Loads temperature.csv, precipitation.csv and stations.csv from `dir`.
WeatherDataset load_weather_dir(const std::string& dir);

struct ScenarioResult {
  int id = 0;
  std::vector<std::size_t> truncations;  // (M_1, M_2)
  Vector eigenvalues;                    // first min(4, M_+) nu_hat
  std::vector<Matrix> eigenfunctions;    // per feature, days x components
  std::vector<QuadratureWeights> weights;
  Matrix scores;                         // stations x components
  bool fewer_than_four = false;
  MfpcaFit fit;                          // full M_+ decomposition

  std::size_t components() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
};

/// B-spline smoothing (10 cubic functions) of both features, then MFPCA with
/// truncations (M1, M2); keeps the first four multivariate components.
ScenarioResult run_scenario(const WeatherDataset& data, std::size_t m1, std::size_t m2, int id);

/// Flips components of `other` whose product-space inner product with the
/// same-rank component of `reference` is negative.
ScenarioResult align_signs(const ScenarioResult& reference, ScenarioResult other);

/// Long format: scenario,component,feature,day,value.
std::string eigenfunctions_csv(const std::vector<ScenarioResult>& results,
                               const std::string& provenance);
/// scenario,rank,eigenvalue.
std::string table2_csv(const std::vector<ScenarioResult>& results, const std::string& provenance);

void export_eigenfunctions(const std::vector<ScenarioResult>& results, const std::string& path,
                           const std::string& provenance);

}  // namespace mfpca::weather
