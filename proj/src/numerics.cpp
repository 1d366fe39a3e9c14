#include "mfpca/numerics.hpp"

#include "mfpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mfpca {

SampledGrid::SampledGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorCode::InvalidGrid,
                "grid needs at least 2 points, got " + std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) {
      throw Error(ErrorCode::InvalidGrid, "non-finite grid point at index " + std::to_string(i));
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw Error(ErrorCode::InvalidGrid,
                  "grid not strictly increasing at index " + std::to_string(i));
    }
  }
}

SampledGrid SampledGrid::uniform(double lo, double hi, std::size_t count) {
  if (count < 2) {
    throw Error(ErrorCode::InvalidGrid, "uniform grid needs at least 2 points");
  }
  std::vector<double> pts(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = lo + step * static_cast<double>(i);
  pts.back() = hi;
  return SampledGrid(std::move(pts));
}

QuadratureWeights trapezoid_weights(const SampledGrid& grid) {
  const std::size_t n = grid.size();
  if (n < 2) throw Error(ErrorCode::InvalidGrid, "trapezoid rule needs at least 2 points");
  QuadratureWeights q;
  q.weights = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double half = 0.5 * (grid[i + 1] - grid[i]);
    q.weights[static_cast<Eigen::Index>(i)] += half;
    q.weights[static_cast<Eigen::Index>(i + 1)] += half;
  }
  return q;
}

SymmetricEigenResult sym_eig(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::InvalidMatrix, "sym_eig needs a non-empty square matrix, got " +
                                              std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()));
  }
  if (!a.allFinite()) throw Error(ErrorCode::InvalidMatrix, "sym_eig input has non-finite entries");

  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidMatrix, "symmetric eigensolver did not converge");
  }

  const Eigen::Index n = sym.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Vector& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return vals[i] > vals[j]; });

  SymmetricEigenResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[k] = vals[src];
    out.eigenvectors.col(k) = solver.eigenvectors().col(src);
  }
  return out;
}

Vector clamp_tiny_negatives(const Vector& eigenvalues, double matrix_max_abs) {
  const double floor = -1e-10 * matrix_max_abs;
  Vector out = eigenvalues;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] < 0.0 && out[i] >= floor) out[i] = 0.0;
  }
  return out;
}

Matrix gram_matrix(const Matrix& funcs, const QuadratureWeights& w) {
  if (funcs.rows() != w.weights.size()) {
    throw Error(ErrorCode::Dimension, "gram_matrix: function length " +
                                          std::to_string(funcs.rows()) + " vs " +
                                          std::to_string(w.weights.size()) + " weights");
  }
  return funcs.transpose() * w.weights.asDiagonal() * funcs;
}

Matrix gram_matrix(std::span<const Vector> funcs, const QuadratureWeights& w) {
  Matrix stacked(w.weights.size(), static_cast<Eigen::Index>(funcs.size()));
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    if (funcs[i].size() != w.weights.size()) {
      throw Error(ErrorCode::Dimension, "gram_matrix: function " + std::to_string(i) +
                                            " has length " + std::to_string(funcs[i].size()));
    }
    stacked.col(static_cast<Eigen::Index>(i)) = funcs[i];
  }
  return gram_matrix(stacked, w);
}

bool needs_sign_flip(const Vector& f) {
  Eigen::Index best = -1;
  double best_abs = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double m = std::abs(f[i]);
    if (m > best_abs) {
      best_abs = m;
      best = i;
    }
  }
  if (best < 0) throw Error(ErrorCode::DegenerateFunction, "canonical_sign of an all-zero function");
  return f[best] < 0.0;
}

Vector canonical_sign(const Vector& f) {
  return needs_sign_flip(f) ? Vector(-f) : f;
}

}  // namespace mfpca
