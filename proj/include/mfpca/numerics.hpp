#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace mfpca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Strictly increasing, finite evaluation points of one feature domain.
class SampledGrid {
 public:
  explicit SampledGrid(std::vector<double> points);

  /// `count` equally spaced points from `lo` to `hi` inclusive.
  static SampledGrid uniform(double lo, double hi, std::size_t count);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double span() const { return points_.back() - points_.front(); }
  std::span<const double> points() const noexcept { return points_; }

  friend bool operator==(const SampledGrid&, const SampledGrid&) = default;

 private:
  std::vector<double> points_;
};

enum class QuadratureRule { Trapezoid };

struct QuadratureWeights {
  Vector weights;
  QuadratureRule rule = QuadratureRule::Trapezoid;

  std::size_t size() const noexcept { return static_cast<std::size_t>(weights.size()); }
};

QuadratureWeights trapezoid_weights(const SampledGrid& grid);

struct SymmetricEigenResult {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // columns aligned with eigenvalues
};

// Full spectrum of a symmetric matrix, sorted descending with ties kept in
// solver order. The input is symmetrised as (A + A^T)/2 first.
SymmetricEigenResult sym_eig(const Matrix& a);

// Zeroes eigenvalues in [-1e-10 * max|A|, 0). Used only where a PSD
// interpretation is wanted (variance explained).
Vector clamp_tiny_negatives(const Vector& eigenvalues, double matrix_max_abs);

/// G_ij = sum_s w_s f_i(s) f_j(s). Each column of `funcs` is one function.
Matrix gram_matrix(const Matrix& funcs, const QuadratureWeights& w);
Matrix gram_matrix(std::span<const Vector> funcs, const QuadratureWeights& w);

/// Returns f or -f so that the first entry of largest magnitude is positive.
Vector canonical_sign(const Vector& f);

/// True when canonical_sign would flip f.
bool needs_sign_flip(const Vector& f);

}  // namespace mfpca
