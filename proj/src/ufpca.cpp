#include "mfpca/ufpca.hpp"

#include "mfpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mfpca {

std::size_t max_truncation(std::size_t observations, std::size_t points) noexcept {
  return observations == 0 ? 0 : std::min(observations - 1, points);
}

CovarianceSurface estimate_covariance(const UnivariateFunctionalSample& centered) {
  const std::size_t n = centered.observations();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientData,
                "covariance needs at least 2 observations, got " + std::to_string(n));
  }
  const Matrix& x = centered.values();
  Matrix c = (x.transpose() * x) / static_cast<double>(n - 1);
  c = 0.5 * (c + c.transpose());
  return {std::move(c), centered.grid(), n};
}

UnivariateEigenSystem eigendecompose_covariance(const CovarianceSurface& cov,
                                                const QuadratureWeights& w,
                                                std::size_t truncation,
                                                std::size_t feature_id) {
  const auto s = static_cast<std::size_t>(cov.values.rows());
  if (w.size() != s) {
    throw Error(ErrorCode::Dimension, "quadrature weights do not match the covariance grid");
  }
  const std::size_t bound = max_truncation(cov.observations, s);
  if (truncation < 1 || truncation > bound) {
    throw Error(ErrorCode::Truncation,
                "feature " + std::to_string(feature_id) + ": truncation " +
                    std::to_string(truncation) + " outside [1, min(N-1, S)] = [1, " +
                    std::to_string(bound) + "]");
  }

  const Vector sqrt_w = w.weights.array().sqrt();
  const Matrix b = sqrt_w.asDiagonal() * cov.values * sqrt_w.asDiagonal();
  const SymmetricEigenResult eig = sym_eig(b);

  UnivariateEigenSystem es{feature_id,
                           eig.eigenvalues.head(static_cast<Eigen::Index>(truncation)),
                           Matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(truncation)),
                           eig.eigenvalues.head(static_cast<Eigen::Index>(bound)),
                           cov.grid,
                           w};
  const Vector inv_sqrt_w = sqrt_w.cwiseInverse();
  for (std::size_t m = 0; m < truncation; ++m) {
    const auto col = static_cast<Eigen::Index>(m);
    Vector phi = inv_sqrt_w.cwiseProduct(eig.eigenvectors.col(col));
    es.eigenfunctions.col(col) = canonical_sign(phi);
  }
  return es;
}

Matrix uni_scores(const UnivariateFunctionalSample& centered, const UnivariateEigenSystem& es) {
  if (!(centered.grid() == es.grid)) {
    throw Error(ErrorCode::Dimension, "sample grid does not match the eigensystem grid");
  }
  return centered.values() * es.weights.weights.asDiagonal() * es.eigenfunctions;
}

std::size_t select_M_by_pve(const Vector& eigenvalues, double alpha) {
  if (!(alpha > 0.0) || alpha > 100.0) {
    throw Error(ErrorCode::Config, "variance level must lie in (0, 100]");
  }
  if (eigenvalues.size() == 0 || (eigenvalues.array() < 0.0).any()) {
    throw Error(ErrorCode::DegenerateSpectrum, "spectrum must be non-empty and nonnegative");
  }
  const double total = eigenvalues.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::DegenerateSpectrum, "spectrum is identically zero");
  double cumulative = 0.0;
  for (Eigen::Index m = 0; m < eigenvalues.size(); ++m) {
    cumulative += eigenvalues[m];
    if (100.0 * cumulative / total >= alpha) return static_cast<std::size_t>(m + 1);
  }
  return static_cast<std::size_t>(eigenvalues.size());
}

UnivariateEigenSystem univariate_fpca(const UnivariateFunctionalSample& centered,
                                      std::size_t truncation) {
  return eigendecompose_covariance(estimate_covariance(centered), centered.weights(), truncation,
                                   centered.feature_id());
}

UnivariateEigenSystem truncate(const UnivariateEigenSystem& es, std::size_t truncation) {
  if (truncation < 1 || truncation > es.truncation()) {
    throw Error(ErrorCode::Truncation, "cannot truncate " + std::to_string(es.truncation()) +
                                           " components to " + std::to_string(truncation));
  }
  UnivariateEigenSystem out = es;
  const auto m = static_cast<Eigen::Index>(truncation);
  out.eigenvalues = es.eigenvalues.head(m);
  out.eigenfunctions = es.eigenfunctions.leftCols(m);
  return out;
}

}  // namespace mfpca
