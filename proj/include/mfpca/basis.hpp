#pragma once

#include "mfpca/fdata.hpp"
#include "mfpca/numerics.hpp"

#include <vector>

namespace mfpca {

inline constexpr std::size_t kDefaultMaxFourier = 101;

/// Orthonormal Fourier system on [grid.front(), grid.back()]: constant, then
/// sin/cos pairs of increasing frequency. Column m of the result is element m.
Matrix fourier_basis(std::size_t count, const SampledGrid& grid,
                     std::size_t max_count = kDefaultMaxFourier);

struct SplitSystemSpec {
  double total_length = 1.0;     // T
  std::vector<double> cuts;      // T_2..T_p, strictly inside (0, T)
  std::vector<int> signs;        // s_1..s_p, each +1 or -1
  std::vector<SampledGrid> grids;  // one per feature, each on [0, 1]

  std::size_t features() const noexcept { return signs.size(); }
  void validate() const;
};

/// M multivariate functions; blocks[j] is S_j x M, column m = block j of psi_m.
struct MultivariateBasisSystem {
  std::vector<Matrix> blocks;
  std::vector<QuadratureWeights> weights;
  double gram_defect = 0.0;  // max |G - I| before orthonormalisation

  std::size_t size() const noexcept {
    return blocks.empty() ? 0 : static_cast<std::size_t>(blocks.front().cols());
  }
  std::size_t features() const noexcept { return blocks.size(); }
  BlockFunction function(std::size_t m) const;
  /// Gram matrix of the system in the product space.
  Matrix gram() const;
};

/// Restricts each master function to [T_j, T_{j+1}], maps it onto feature j's
/// grid with sign s_j, then orthonormalises the whole system in the product
/// space (modified Gram-Schmidt with one re-orthogonalisation pass).
MultivariateBasisSystem split_system(const Matrix& psi, const SampledGrid& master,
                                     const SplitSystemSpec& spec);

/// Same construction before orthonormalisation; exposed for tests.
MultivariateBasisSystem split_system_raw(const Matrix& psi, const SampledGrid& master,
                                         const SplitSystemSpec& spec);

/// S x K design matrix of clamped B-splines with equally spaced interior knots
/// over [grid.front(), grid.back()].
Matrix bspline_design(const SampledGrid& grid, std::size_t count, int degree = 3);

/// Least-squares projection of every curve onto the column span of `design`.
UnivariateFunctionalSample smooth_to_basis(const UnivariateFunctionalSample& sample,
                                           const Matrix& design);

}  // namespace mfpca
