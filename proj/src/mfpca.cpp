#include "mfpca/mfpca.hpp"

#include "mfpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mfpca {

TruncationSpec::TruncationSpec(std::vector<std::size_t> per_feature)
    : per_feature_(std::move(per_feature)) {
  if (per_feature_.empty()) throw Error(ErrorCode::Truncation, "truncation list is empty");
  for (std::size_t j = 0; j < per_feature_.size(); ++j) {
    if (per_feature_[j] < 1) {
      throw Error(ErrorCode::Truncation,
                  "feature " + std::to_string(j) + " truncation must be at least 1");
    }
  }
  plus_ = std::accumulate(per_feature_.begin(), per_feature_.end(), std::size_t{0});
  minus_ = *std::min_element(per_feature_.begin(), per_feature_.end());
}

std::size_t ScoreMatrix::block_offset(std::size_t feature) const {
  return std::accumulate(block_sizes.begin(),
                         block_sizes.begin() + static_cast<std::ptrdiff_t>(feature),
                         std::size_t{0});
}

BlockFunction MultivariateEigenSystem::eigenfunction(std::size_t m) const {
  BlockFunction f;
  for (const auto& block : eigenfunctions) f.emplace_back(block.col(static_cast<Eigen::Index>(m)));
  return f;
}

std::size_t VarianceReport::npc_for(double alpha) const {
  for (const auto& [a, count] : npc) {
    if (a == alpha) return count;
  }
  throw Error(ErrorCode::Config, "variance level " + std::to_string(alpha) + " was not requested");
}

ScoreMatrix assemble_scores(const std::vector<Matrix>& per_feature_scores) {
  if (per_feature_scores.empty()) throw Error(ErrorCode::Dimension, "no feature scores to assemble");
  const Eigen::Index n = per_feature_scores.front().rows();
  Eigen::Index total = 0;
  for (std::size_t j = 0; j < per_feature_scores.size(); ++j) {
    if (per_feature_scores[j].rows() != n) {
      throw Error(ErrorCode::Dimension, "feature " + std::to_string(j) + " scores have " +
                                            std::to_string(per_feature_scores[j].rows()) +
                                            " rows, expected " + std::to_string(n));
    }
    total += per_feature_scores[j].cols();
  }
  ScoreMatrix xi;
  xi.values.resize(n, total);
  Eigen::Index offset = 0;
  for (std::size_t j = 0; j < per_feature_scores.size(); ++j) {
    const Matrix& block = per_feature_scores[j];
    xi.values.middleCols(offset, block.cols()) = block;
    for (Eigen::Index m = 0; m < block.cols(); ++m) {
      xi.layout.push_back({j, static_cast<std::size_t>(m)});
    }
    xi.block_sizes.push_back(static_cast<std::size_t>(block.cols()));
    offset += block.cols();
  }
  return xi;
}

Matrix score_covariance(const ScoreMatrix& xi) {
  const Eigen::Index n = xi.values.rows();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientData,
                "score covariance needs at least 2 observations, got " + std::to_string(n));
  }
  Matrix z = (xi.values.transpose() * xi.values) / static_cast<double>(n - 1);
  return 0.5 * (z + z.transpose());
}

MultivariateEigenSystem mfpca_combine(const std::vector<UnivariateEigenSystem>& uni,
                                      const ScoreMatrix& xi) {
  if (uni.size() != xi.block_sizes.size()) {
    throw Error(ErrorCode::Dimension, "score matrix has " + std::to_string(xi.block_sizes.size()) +
                                          " blocks for " + std::to_string(uni.size()) +
                                          " univariate systems");
  }
  for (std::size_t j = 0; j < uni.size(); ++j) {
    if (uni[j].truncation() != xi.block_sizes[j]) {
      throw Error(ErrorCode::Dimension,
                  "feature " + std::to_string(j) + ": score block has " +
                      std::to_string(xi.block_sizes[j]) + " columns, eigensystem retains " +
                      std::to_string(uni[j].truncation()));
    }
  }

  const SymmetricEigenResult eig = sym_eig(score_covariance(xi));
  const Eigen::Index k = eig.eigenvalues.size();

  MultivariateEigenSystem sys;
  sys.eigenvalues = eig.eigenvalues;
  sys.coefficients = eig.eigenvectors;
  sys.block_sizes = xi.block_sizes;
  sys.reliable_count = *std::min_element(xi.block_sizes.begin(), xi.block_sizes.end());

  Eigen::Index offset = 0;
  for (const auto& es : uni) {
    const auto mj = static_cast<Eigen::Index>(es.truncation());
    sys.eigenfunctions.push_back(es.eigenfunctions * sys.coefficients.middleRows(offset, mj));
    sys.weights.push_back(es.weights);
    offset += mj;
  }

  // Flip psi_m and c_m together so rho = Xi c_m stays consistent.
  for (Eigen::Index m = 0; m < k; ++m) {
    Eigen::Index total = 0;
    for (const auto& block : sys.eigenfunctions) total += block.rows();
    Vector stacked(total);
    Eigen::Index pos = 0;
    for (const auto& block : sys.eigenfunctions) {
      stacked.segment(pos, block.rows()) = block.col(m);
      pos += block.rows();
    }
    if (stacked.cwiseAbs().maxCoeff() > 0.0 && needs_sign_flip(stacked)) {
      sys.coefficients.col(m) *= -1.0;
      for (auto& block : sys.eigenfunctions) block.col(m) *= -1.0;
    }
  }
  return sys;
}

Matrix multivariate_scores(const ScoreMatrix& xi, const MultivariateEigenSystem& system) {
  if (xi.values.cols() != system.coefficients.rows()) {
    throw Error(ErrorCode::Dimension, "score matrix has " + std::to_string(xi.values.cols()) +
                                          " columns, coefficients have " +
                                          std::to_string(system.coefficients.rows()) + " rows");
  }
  return xi.values * system.coefficients;
}

namespace {

Vector checked_spectrum(const Vector& eigenvalues) {
  if (eigenvalues.size() == 0) throw Error(ErrorCode::DegenerateSpectrum, "empty spectrum");
  const double scale = eigenvalues.cwiseAbs().maxCoeff();
  Vector nu = clamp_tiny_negatives(eigenvalues, scale);
  if ((nu.array() < 0.0).any()) {
    throw Error(ErrorCode::DegenerateSpectrum, "spectrum has significantly negative eigenvalues");
  }
  if (!(nu.sum() > 0.0)) throw Error(ErrorCode::DegenerateSpectrum, "spectrum is identically zero");
  return nu;
}

std::size_t npc_from_cumulative(const Vector& cumulative, double alpha) {
  std::size_t below = 0;
  for (Eigen::Index m = 0; m < cumulative.size(); ++m) {
    if (cumulative[m] < alpha) ++below;
  }
  return std::min(below + 1, static_cast<std::size_t>(cumulative.size()));
}

}  // namespace

VarianceReport variance_report(const Vector& eigenvalues, const std::vector<double>& alphas) {
  const Vector nu = checked_spectrum(eigenvalues);
  VarianceReport report;
  report.pve = 100.0 * nu / nu.sum();
  report.cumulative.resize(report.pve.size());
  double acc = 0.0;
  for (Eigen::Index m = 0; m < report.pve.size(); ++m) {
    acc += report.pve[m];
    report.cumulative[m] = acc;
  }
  for (double alpha : alphas) {
    if (!(alpha > 0.0) || alpha > 100.0) {
      throw Error(ErrorCode::Config, "variance level must lie in (0, 100]");
    }
    report.npc.emplace_back(alpha, npc_from_cumulative(report.cumulative, alpha));
  }
  return report;
}

std::size_t npc(const Vector& eigenvalues, double alpha) {
  return variance_report(eigenvalues, {alpha}).npc.front().second;
}

MultivariateEigenSystem truncate_reliable(const MultivariateEigenSystem& system) {
  const auto keep = static_cast<Eigen::Index>(std::min(system.reliable_count, system.components()));
  MultivariateEigenSystem out = system;
  out.eigenvalues = system.eigenvalues.head(keep);
  out.coefficients = system.coefficients.leftCols(keep);
  for (auto& block : out.eigenfunctions) block = block.leftCols(keep).eval();
  return out;
}

MfpcaFit fit_mfpca(const MultivariateFunctionalSample& sample, const TruncationSpec& truncation) {
  if (truncation.features() != sample.features()) {
    throw Error(ErrorCode::Truncation, "got " + std::to_string(truncation.features()) +
                                           " truncations for " + std::to_string(sample.features()) +
                                           " features");
  }
  CenteredSample centered = center(sample);
  MfpcaFit fit{std::move(centered.mean), {}, {}, {}, {}};
  std::vector<Matrix> scores;
  for (std::size_t j = 0; j < sample.features(); ++j) {
    const auto& feat = centered.sample.feature(j);
    fit.univariate.push_back(univariate_fpca(feat, truncation.per_feature()[j]));
    scores.push_back(uni_scores(feat, fit.univariate.back()));
  }
  fit.scores = assemble_scores(scores);
  fit.system = mfpca_combine(fit.univariate, fit.scores);
  fit.multivariate_scores = multivariate_scores(fit.scores, fit.system);
  return fit;
}

}  // namespace mfpca
