#include "mfpca/fdata.hpp"

#include "mfpca/error.hpp"

#include <string>

namespace mfpca {

UnivariateFunctionalSample::UnivariateFunctionalSample(SampledGrid grid, Matrix values,
                                                       std::size_t feature_id)
    : grid_(std::move(grid)),
      weights_(trapezoid_weights(grid_)),
      values_(std::move(values)),
      feature_id_(feature_id) {
  if (static_cast<std::size_t>(values_.cols()) != grid_.size()) {
    throw Error(ErrorCode::Dimension, "feature " + std::to_string(feature_id_) + ": curves have " +
                                          std::to_string(values_.cols()) + " points, grid has " +
                                          std::to_string(grid_.size()));
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::Validation,
                "feature " + std::to_string(feature_id_) + " contains non-finite values");
  }
}

UnivariateFunctionalSample UnivariateFunctionalSample::with_values(Matrix values) const {
  return UnivariateFunctionalSample(grid_, std::move(values), feature_id_);
}

MultivariateFunctionalSample::MultivariateFunctionalSample(
    std::vector<UnivariateFunctionalSample> features)
    : features_(std::move(features)) {
  if (features_.empty()) throw Error(ErrorCode::Dimension, "a sample needs at least one feature");
  const std::size_t n = features_.front().observations();
  for (std::size_t j = 0; j < features_.size(); ++j) {
    if (features_[j].observations() != n) {
      throw Error(ErrorCode::Dimension, "feature " + std::to_string(j) + " has " +
                                            std::to_string(features_[j].observations()) +
                                            " observations, expected " + std::to_string(n));
    }
    if (features_[j].feature_id() != j) {
      throw Error(ErrorCode::Dimension, "feature ids must be 0..p-1 in order");
    }
  }
}

double inner_product_uni(const Vector& f, const Vector& g, const QuadratureWeights& w) {
  if (f.size() != g.size() || f.size() != w.weights.size()) {
    throw Error(ErrorCode::Dimension, "inner product of vectors with lengths " +
                                          std::to_string(f.size()) + ", " +
                                          std::to_string(g.size()) + " on " +
                                          std::to_string(w.weights.size()) + " weights");
  }
  double acc = 0.0;
  for (Eigen::Index s = 0; s < f.size(); ++s) acc += w.weights[s] * f[s] * g[s];
  return acc;
}

double inner_product_multi(const BlockFunction& f, const BlockFunction& g,
                           const std::vector<QuadratureWeights>& w) {
  if (f.size() != g.size() || f.size() != w.size()) {
    throw Error(ErrorCode::Dimension, "block count mismatch in multivariate inner product");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += inner_product_uni(f[j], g[j], w[j]);
  return acc;
}

CenteredSample center(const MultivariateFunctionalSample& sample) {
  const std::size_t n = sample.observations();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientData,
                "centering needs at least 2 observations, got " + std::to_string(n));
  }
  MeanFunction mean;
  std::vector<UnivariateFunctionalSample> centered;
  centered.reserve(sample.features());
  for (const auto& feat : sample.all()) {
    Vector mu = feat.values().colwise().mean().transpose();
    Matrix values = feat.values().rowwise() - mu.transpose();
    mean.per_feature.push_back(std::move(mu));
    centered.push_back(feat.with_values(std::move(values)));
  }
  return {std::move(mean), MultivariateFunctionalSample(std::move(centered))};
}

}  // namespace mfpca
