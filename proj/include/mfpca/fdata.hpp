#pragma once

#include "mfpca/numerics.hpp"

#include <vector>

namespace mfpca {

/// N curves of one feature, densely evaluated on a shared grid (rows = curves).
class UnivariateFunctionalSample {
 public:
  UnivariateFunctionalSample(SampledGrid grid, Matrix values, std::size_t feature_id = 0);

  const SampledGrid& grid() const noexcept { return grid_; }
  const QuadratureWeights& weights() const noexcept { return weights_; }
  const Matrix& values() const noexcept { return values_; }
  std::size_t feature_id() const noexcept { return feature_id_; }
  std::size_t observations() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t points() const noexcept { return grid_.size(); }

  UnivariateFunctionalSample with_values(Matrix values) const;

 private:
  SampledGrid grid_;
  QuadratureWeights weights_;
  Matrix values_;
  std::size_t feature_id_;
};

/// p features observed on the same N units; feature ids are 0..p-1 in order.
class MultivariateFunctionalSample {
 public:
  explicit MultivariateFunctionalSample(std::vector<UnivariateFunctionalSample> features);

  std::size_t features() const noexcept { return features_.size(); }
  std::size_t observations() const noexcept { return features_.front().observations(); }
  const UnivariateFunctionalSample& feature(std::size_t j) const { return features_.at(j); }
  const std::vector<UnivariateFunctionalSample>& all() const noexcept { return features_; }

 private:
  std::vector<UnivariateFunctionalSample> features_;
};

struct MeanFunction {
  std::vector<Vector> per_feature;
};

/// A multivariate function: one grid vector per feature.
using BlockFunction = std::vector<Vector>;

double inner_product_uni(const Vector& f, const Vector& g, const QuadratureWeights& w);

double inner_product_multi(const BlockFunction& f, const BlockFunction& g,
                           const std::vector<QuadratureWeights>& w);

struct CenteredSample {
  MeanFunction mean;
  MultivariateFunctionalSample sample;
};

CenteredSample center(const MultivariateFunctionalSample& sample);

}  // namespace mfpca
