#include "mfpca/basis.hpp"

#include "mfpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mfpca {

Matrix fourier_basis(std::size_t count, const SampledGrid& grid, std::size_t max_count) {
  if (count < 1) throw Error(ErrorCode::Config, "Fourier basis needs at least one element");
  if (count > max_count) {
    throw Error(ErrorCode::Config, "Fourier basis size " + std::to_string(count) +
                                       " exceeds the maximum of " + std::to_string(max_count));
  }
  const double length = grid.span();
  const auto rows = static_cast<Eigen::Index>(grid.size());
  Matrix out(rows, static_cast<Eigen::Index>(count));
  const double c0 = 1.0 / std::sqrt(length);
  const double ck = std::sqrt(2.0 / length);
  for (Eigen::Index s = 0; s < rows; ++s) {
    const double t = grid[static_cast<std::size_t>(s)] - grid.front();
    out(s, 0) = c0;
    for (std::size_t m = 1; m < count; ++m) {
      const double k = static_cast<double>((m + 1) / 2);
      const double arg = 2.0 * std::numbers::pi * k * t / length;
      out(s, static_cast<Eigen::Index>(m)) = ck * (m % 2 == 1 ? std::sin(arg) : std::cos(arg));
    }
  }
  return out;
}

void SplitSystemSpec::validate() const {
  const std::size_t p = signs.size();
  if (p == 0) throw Error(ErrorCode::Spec, "split system needs at least one feature");
  if (!(total_length > 0.0)) throw Error(ErrorCode::Spec, "total length T must be positive");
  if (cuts.size() + 1 != p) {
    throw Error(ErrorCode::Spec, "expected " + std::to_string(p - 1) + " cut points, got " +
                                     std::to_string(cuts.size()));
  }
  if (grids.size() != p) throw Error(ErrorCode::Spec, "expected one grid per feature");
  double prev = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!(cuts[i] > prev) || !(cuts[i] < total_length)) {
      throw Error(ErrorCode::Spec, "cut points must be strictly increasing inside (0, T)");
    }
    prev = cuts[i];
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw Error(ErrorCode::Spec, "signs must be +1 or -1");
  }
}

BlockFunction MultivariateBasisSystem::function(std::size_t m) const {
  BlockFunction f;
  f.reserve(blocks.size());
  for (const auto& b : blocks) f.emplace_back(b.col(static_cast<Eigen::Index>(m)));
  return f;
}

Matrix MultivariateBasisSystem::gram() const {
  const auto m = static_cast<Eigen::Index>(size());
  Matrix g = Matrix::Zero(m, m);
  for (std::size_t j = 0; j < blocks.size(); ++j) g += gram_matrix(blocks[j], weights[j]);
  return g;
}

namespace {

double interpolate(const SampledGrid& master, const Matrix& psi, Eigen::Index col, double x) {
  const auto pts = master.points();
  if (x <= pts.front()) return psi(0, col);
  if (x >= pts.back()) return psi(static_cast<Eigen::Index>(pts.size() - 1), col);
  const auto hi = std::upper_bound(pts.begin(), pts.end(), x) - pts.begin();
  const auto lo = hi - 1;
  const double frac = (x - pts[static_cast<std::size_t>(lo)]) /
                      (pts[static_cast<std::size_t>(hi)] - pts[static_cast<std::size_t>(lo)]);
  return (1.0 - frac) * psi(lo, col) + frac * psi(hi, col);
}

double block_inner(const MultivariateBasisSystem& sys, Eigen::Index a, Eigen::Index b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < sys.blocks.size(); ++j) {
    acc += (sys.blocks[j].col(a).array() * sys.blocks[j].col(b).array() *
            sys.weights[j].weights.array())
               .sum();
  }
  return acc;
}

}  // namespace

MultivariateBasisSystem split_system_raw(const Matrix& psi, const SampledGrid& master,
                                         const SplitSystemSpec& spec) {
  spec.validate();
  if (static_cast<std::size_t>(psi.rows()) != master.size()) {
    throw Error(ErrorCode::Dimension, "master functions do not match the master grid");
  }
  const std::size_t p = spec.features();
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), spec.cuts.begin(), spec.cuts.end());
  edges.push_back(spec.total_length);

  MultivariateBasisSystem sys;
  for (std::size_t j = 0; j < p; ++j) {
    const SampledGrid& g = spec.grids[j];
    const double lo = edges[j];
    const double len = edges[j + 1] - edges[j];
    Matrix block(static_cast<Eigen::Index>(g.size()), psi.cols());
    for (Eigen::Index m = 0; m < psi.cols(); ++m) {
      for (std::size_t s = 0; s < g.size(); ++s) {
        block(static_cast<Eigen::Index>(s), m) =
            spec.signs[j] * interpolate(master, psi, m, lo + g[s] * len);
      }
    }
    sys.blocks.push_back(std::move(block));
    sys.weights.push_back(trapezoid_weights(g));
  }
  const Matrix g = sys.gram();
  sys.gram_defect = (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  return sys;
}

MultivariateBasisSystem split_system(const Matrix& psi, const SampledGrid& master,
                                     const SplitSystemSpec& spec) {
  MultivariateBasisSystem sys = split_system_raw(psi, master, spec);
  const auto count = static_cast<Eigen::Index>(sys.size());
  for (Eigen::Index m = 0; m < count; ++m) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < m; ++k) {
        const double proj = block_inner(sys, m, k);
        for (auto& b : sys.blocks) b.col(m) -= proj * b.col(k);
      }
    }
    const double norm = std::sqrt(block_inner(sys, m, m));
    if (!(norm > 1e-12)) {
      throw Error(ErrorCode::Spec, "split system is numerically rank deficient at function " +
                                       std::to_string(m));
    }
    for (auto& b : sys.blocks) b.col(m) /= norm;
  }
  return sys;
}

Matrix bspline_design(const SampledGrid& grid, std::size_t count, int degree) {
  if (degree < 0) throw Error(ErrorCode::Config, "B-spline degree must be non-negative");
  const auto d = static_cast<std::size_t>(degree);
  if (count < d + 1) {
    throw Error(ErrorCode::Config, "B-spline basis of degree " + std::to_string(degree) +
                                       " needs at least " + std::to_string(d + 1) +
                                       " functions, got " + std::to_string(count));
  }
  const double a = grid.front();
  const double b = grid.back();
  const std::size_t interior = count - d - 1;
  std::vector<double> knots;
  knots.reserve(count + d + 1);
  for (std::size_t i = 0; i <= d; ++i) knots.push_back(a);
  for (std::size_t i = 1; i <= interior; ++i) {
    knots.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(interior + 1));
  }
  for (std::size_t i = 0; i <= d; ++i) knots.push_back(b);

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(count));
  std::vector<double> left(d + 1), right(d + 1), basis(d + 1);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const double t = grid[s];
    // Knot span: knots[span] <= t < knots[span + 1], with the right end
    // folded into the last non-empty span.
    std::size_t span = count - 1;
    if (t < b) {
      span = static_cast<std::size_t>(
                 std::upper_bound(knots.begin(), knots.end(), t) - knots.begin()) - 1;
      span = std::clamp(span, d, count - 1);
    }
    basis[0] = 1.0;
    for (std::size_t r = 1; r <= d; ++r) {
      left[r] = t - knots[span + 1 - r];
      right[r] = knots[span + r] - t;
      double saved = 0.0;
      for (std::size_t k = 0; k < r; ++k) {
        const double tmp = basis[k] / (right[k + 1] + left[r - k]);
        basis[k] = saved + right[k + 1] * tmp;
        saved = left[r - k] * tmp;
      }
      basis[r] = saved;
    }
    for (std::size_t k = 0; k <= d; ++k) {
      out(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(span - d + k)) = basis[k];
    }
  }
  return out;
}

UnivariateFunctionalSample smooth_to_basis(const UnivariateFunctionalSample& sample,
                                           const Matrix& design) {
  if (static_cast<std::size_t>(design.rows()) != sample.points()) {
    throw Error(ErrorCode::Dimension, "design has " + std::to_string(design.rows()) +
                                          " rows, sample has " + std::to_string(sample.points()) +
                                          " points");
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < design.cols()) {
    throw Error(ErrorCode::SingularFit, "design matrix has rank " + std::to_string(qr.rank()) +
                                            " < " + std::to_string(design.cols()));
  }
  const Matrix coef = qr.solve(sample.values().transpose());
  Matrix fitted = (design * coef).transpose();
  return sample.with_values(std::move(fitted));
}

}  // namespace mfpca
