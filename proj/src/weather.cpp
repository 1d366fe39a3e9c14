#include "mfpca/weather.hpp"

#include "mfpca/basis.hpp"
#include "mfpca/csv.hpp"
#include "mfpca/error.hpp"
#include "mfpca/format.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>

namespace mfpca::weather {

namespace {

const char* const kFeatureNames[] = {"temperature", "precipitation"};

SampledGrid day_grid() { return SampledGrid::uniform(1.0, static_cast<double>(kDays), kDays); }

FeatureTable load_feature(const std::string& path) {
  FeatureTable t = read_feature_csv(path);
  if (t.grid) throw Error(ErrorCode::Schema, path + ": unexpected grid column 't'");
  if (t.observation_names.size() != kStations ||
      static_cast<std::size_t>(t.values.cols()) != kDays) {
    throw Error(ErrorCode::Schema, path + ": expected " + std::to_string(kDays) + " rows x " +
                                       std::to_string(kStations) + " station columns, found " +
                                       std::to_string(t.values.cols()) + " x " +
                                       std::to_string(t.observation_names.size()));
  }
  return t;
}

void check_bounds(const Matrix& values, double lo, double hi, const std::string& path,
                  const std::vector<std::string>& stations) {
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index d = 0; d < values.cols(); ++d) {
      const double v = values(i, d);
      if (!(v >= lo && v <= hi)) {
        throw Error(ErrorCode::Validation,
                    path + ": value " + format_double(v) + " at row " + std::to_string(d + 1) +
                        " (day " + std::to_string(d + 1) + "), column " + std::to_string(i + 1) +
                        " (" + stations[static_cast<std::size_t>(i)] + ") outside [" +
                        format_double(lo) + ", " + format_double(hi) + "]");
      }
    }
  }
}

}  // namespace

MultivariateFunctionalSample WeatherDataset::sample() const {
  std::vector<UnivariateFunctionalSample> f;
  f.emplace_back(days, temperature, 0);
  f.emplace_back(days, precipitation, 1);
  return MultivariateFunctionalSample(std::move(f));
}

WeatherDataset load_weather(const std::string& temperature_path,
                            const std::string& precipitation_path,
                            const std::string& stations_path) {
  FeatureTable temp = load_feature(temperature_path);
  FeatureTable precip = load_feature(precipitation_path);
  if (precip.observation_names != temp.observation_names) {
    throw Error(ErrorCode::Schema,
                precipitation_path + ": station columns differ from " + temperature_path);
  }
  const CsvTable meta = read_csv(stations_path);
  const std::vector<std::string> expected{"id", "name", "latitude", "longitude"};
  if (meta.header != expected) {
    throw Error(ErrorCode::Schema, stations_path + ": header must be id,name,latitude,longitude");
  }
  if (meta.rows.size() != kStations) {
    throw Error(ErrorCode::Schema, stations_path + ": expected " + std::to_string(kStations) +
                                       " stations, found " + std::to_string(meta.rows.size()));
  }
  for (std::size_t i = 0; i < meta.rows.size(); ++i) {
    if (meta.rows[i].size() != expected.size() || meta.rows[i][0] != temp.observation_names[i]) {
      throw Error(ErrorCode::Schema, stations_path + ": row " + std::to_string(i + 1) +
                                         " does not match station column '" +
                                         temp.observation_names[i] + "'");
    }
  }
  check_bounds(temp.values, -60.0, 50.0, temperature_path, temp.observation_names);
  check_bounds(precip.values, 0.0, std::numeric_limits<double>::infinity(), precipitation_path,
               temp.observation_names);
  return {std::move(temp.observation_names), day_grid(), std::move(temp.values),
          std::move(precip.values)};
}

WeatherDataset load_weather_dir(const std::string& dir) {
  const std::filesystem::path base(dir);
  return load_weather((base / "temperature.csv").string(), (base / "precipitation.csv").string(),
                      (base / "stations.csv").string());
}

ScenarioResult run_scenario(const WeatherDataset& data, std::size_t m1, std::size_t m2, int id) {
  if (m1 < 1 || m2 < 1) throw Error(ErrorCode::Truncation, "scenario truncations must be >= 1");
  const MultivariateFunctionalSample raw = data.sample();
  const Matrix design = bspline_design(data.days, kSmoothingBasis, kSplineDegree);
  std::vector<UnivariateFunctionalSample> smoothed;
  for (const auto& feat : raw.all()) smoothed.push_back(smooth_to_basis(feat, design));

  ScenarioResult r;
  r.id = id;
  r.truncations = {m1, m2};
  r.fit = fit_mfpca(MultivariateFunctionalSample(std::move(smoothed)), TruncationSpec({m1, m2}));
  const std::size_t keep = std::min<std::size_t>(4, r.fit.system.components());
  r.fewer_than_four = keep < 4;
  const auto k = static_cast<Eigen::Index>(keep);
  r.eigenvalues = r.fit.system.eigenvalues.head(k);
  for (const auto& block : r.fit.system.eigenfunctions) r.eigenfunctions.push_back(block.leftCols(k));
  r.weights = r.fit.system.weights;
  r.scores = r.fit.multivariate_scores.leftCols(k);
  return r;
}

ScenarioResult align_signs(const ScenarioResult& reference, ScenarioResult other) {
  const std::size_t k = std::min(reference.components(), other.components());
  for (std::size_t m = 0; m < k; ++m) {
    const auto col = static_cast<Eigen::Index>(m);
    double ip = 0.0;
    for (std::size_t j = 0; j < other.eigenfunctions.size(); ++j) {
      ip += inner_product_uni(reference.eigenfunctions[j].col(col),
                              other.eigenfunctions[j].col(col), other.weights[j]);
    }
    if (ip < 0.0) {
      for (auto& block : other.eigenfunctions) block.col(col) *= -1.0;
      other.scores.col(col) *= -1.0;
    }
  }
  return other;
}

std::string eigenfunctions_csv(const std::vector<ScenarioResult>& results,
                               const std::string& provenance) {
  std::string out = provenance;
  out += "scenario,component,feature,day,value\n";
  for (const auto& r : results) {
    for (std::size_t m = 0; m < r.components(); ++m) {
      for (std::size_t j = 0; j < r.eigenfunctions.size(); ++j) {
        const Matrix& block = r.eigenfunctions[j];
        for (Eigen::Index d = 0; d < block.rows(); ++d) {
          out += std::to_string(r.id) + "," + std::to_string(m + 1) + "," + kFeatureNames[j] +
                 "," + std::to_string(d + 1) + "," +
                 format_double(block(d, static_cast<Eigen::Index>(m))) + "\n";
        }
      }
    }
  }
  return out;
}

std::string table2_csv(const std::vector<ScenarioResult>& results, const std::string& provenance) {
  std::string out = provenance;
  out += "scenario,rank,eigenvalue\n";
  for (const auto& r : results) {
    for (Eigen::Index m = 0; m < r.eigenvalues.size(); ++m) {
      out += std::to_string(r.id) + "," + std::to_string(m + 1) + "," +
             format_double(r.eigenvalues[m]) + "\n";
    }
  }
  return out;
}

void export_eigenfunctions(const std::vector<ScenarioResult>& results, const std::string& path,
                           const std::string& provenance) {
  write_text_file(path, eigenfunctions_csv(results, provenance));
}

}  // namespace mfpca::weather
