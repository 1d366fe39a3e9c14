#pragma once

#include "mfpca/fdata.hpp"
#include "mfpca/numerics.hpp"

namespace mfpca {

/// Discretised C_jj(s, t) for one feature.
struct CovarianceSurface {
  Matrix values;  // S x S, symmetric
  SampledGrid grid;
  std::size_t observations = 0;
};

struct UnivariateEigenSystem {
  std::size_t feature_id = 0;
  Vector eigenvalues;       // retained lambda_1..lambda_M, descending
  Matrix eigenfunctions;    // S x M, column m = phi_m on the grid
  Vector full_spectrum;     // all computable eigenvalues, length min(N-1, S)
  SampledGrid grid;
  QuadratureWeights weights;

  std::size_t truncation() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
};

CovarianceSurface estimate_covariance(const UnivariateFunctionalSample& centered);

/// Weighted eigenproblem through B = W^{1/2} C W^{1/2}; phi = W^{-1/2} v.
/// `truncation` must satisfy 1 <= M <= min(N-1, S).
UnivariateEigenSystem eigendecompose_covariance(const CovarianceSurface& cov,
                                                const QuadratureWeights& w,
                                                std::size_t truncation,
                                                std::size_t feature_id = 0);

/// xi_{n,m} = <x_n, phi_m>_2 by quadrature; N x M.
Matrix uni_scores(const UnivariateFunctionalSample& centered, const UnivariateEigenSystem& es);

/// Smallest M with cumulative share >= alpha percent of the whole spectrum.
std::size_t select_M_by_pve(const Vector& eigenvalues, double alpha);

/// Largest truncation the estimator supports: min(N-1, S).
std::size_t max_truncation(std::size_t observations, std::size_t points) noexcept;

/// Convenience: full spectrum first, then keep `truncation` components.
UnivariateEigenSystem univariate_fpca(const UnivariateFunctionalSample& centered,
                                      std::size_t truncation);

/// Keep the first `truncation` components of an existing system.
UnivariateEigenSystem truncate(const UnivariateEigenSystem& es, std::size_t truncation);

}  // namespace mfpca
