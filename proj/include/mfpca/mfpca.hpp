#pragma once

#include "mfpca/fdata.hpp"
#include "mfpca/numerics.hpp"
#include "mfpca/ufpca.hpp"

#include <utility>
#include <vector>

namespace mfpca {

class TruncationSpec {
 public:
  explicit TruncationSpec(std::vector<std::size_t> per_feature);

  const std::vector<std::size_t>& per_feature() const noexcept { return per_feature_; }
  std::size_t features() const noexcept { return per_feature_.size(); }
  std::size_t plus() const noexcept { return plus_; }
  std::size_t minus() const noexcept { return minus_; }

 private:
  std::vector<std::size_t> per_feature_;
  std::size_t plus_ = 0;
  std::size_t minus_ = 0;
};

struct ScoreColumn {
  std::size_t feature;
  std::size_t component;
  friend bool operator==(const ScoreColumn&, const ScoreColumn&) = default;
};

/// Xi: the per-feature scores concatenated column-wise in feature order.
struct ScoreMatrix {
  Matrix values;                    // N x M_+
  std::vector<ScoreColumn> layout;  // one entry per column
  std::vector<std::size_t> block_sizes;

  std::size_t block_offset(std::size_t feature) const;
};

struct MultivariateEigenSystem {
  Vector eigenvalues;                // nu, descending
  Matrix coefficients;               // M_+ x K, column m = c_m
  std::vector<Matrix> eigenfunctions;  // per feature S_j x K, column m = psi_m^(j)
  std::vector<QuadratureWeights> weights;
  std::vector<std::size_t> block_sizes;  // M_j
  std::size_t reliable_count = 0;        // M_-

  std::size_t components() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  bool reliable(std::size_t m) const noexcept { return m < reliable_count; }
  BlockFunction eigenfunction(std::size_t m) const;
};

struct VarianceReport {
  Vector pve;         // percent per component
  Vector cumulative;  // percent, PVE_{1:m}
  std::vector<std::pair<double, std::size_t>> npc;  // (alpha, NPC_alpha)

  std::size_t npc_for(double alpha) const;
};

ScoreMatrix assemble_scores(const std::vector<Matrix>& per_feature_scores);

/// Z = (N - 1)^{-1} Xi^T Xi.
Matrix score_covariance(const ScoreMatrix& xi);

MultivariateEigenSystem mfpca_combine(const std::vector<UnivariateEigenSystem>& uni,
                                      const ScoreMatrix& xi);

/// rho = Xi [c_1 ... c_K].
Matrix multivariate_scores(const ScoreMatrix& xi, const MultivariateEigenSystem& system);

/// Percent of variance explained over the supplied eigenvalues and the number
/// of components whose cumulative share first reaches each alpha.
VarianceReport variance_report(const Vector& eigenvalues, const std::vector<double>& alphas);

/// NPC_alpha alone, without building the per-component vectors.
std::size_t npc(const Vector& eigenvalues, double alpha);

/// Keeps only the first M_- components.
MultivariateEigenSystem truncate_reliable(const MultivariateEigenSystem& system);

/// Centering, univariate FPCA per feature, score assembly and combination.
struct MfpcaFit {
  MeanFunction mean;
  std::vector<UnivariateEigenSystem> univariate;
  ScoreMatrix scores;
  MultivariateEigenSystem system;
  Matrix multivariate_scores;  // N x M_+
};

MfpcaFit fit_mfpca(const MultivariateFunctionalSample& sample, const TruncationSpec& truncation);

}  // namespace mfpca
