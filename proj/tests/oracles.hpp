#pragma once

// Reference implementations used only to cross-check the library. They are
// deliberately naive and share no code with src/.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Eig {
  Vector values;   // descending
  Matrix vectors;  // columns
};

// Cyclic Jacobi rotations until the off-diagonal mass vanishes.
inline Eig jacobi(Matrix a) {
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  Eig out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

inline Vector trapezoid(const std::vector<double>& t) {
  const std::size_t s = t.size();
  Vector w = Vector::Zero(static_cast<Eigen::Index>(s));
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const double h = t[i + 1] - t[i];
    w[static_cast<Eigen::Index>(i)] += h / 2;
    w[static_cast<Eigen::Index>(i + 1)] += h / 2;
  }
  return w;
}

// One big weighted PCA of the features laid end to end on a single long grid.
struct StackedPca {
  Vector values;
  Matrix functions;  // stacked length x components
  Vector weights;
};

inline StackedPca stacked_pca(const std::vector<Matrix>& curves,
                              const std::vector<std::vector<double>>& grids) {
  Eigen::Index total = 0;
  for (const auto& c : curves) total += c.cols();
  const Eigen::Index n = curves.front().rows();
  Matrix x(n, total);
  Vector w(total);
  Eigen::Index off = 0;
  for (std::size_t j = 0; j < curves.size(); ++j) {
    Matrix c = curves[j];
    c.rowwise() -= c.colwise().mean();
    x.middleCols(off, c.cols()) = c;
    w.segment(off, c.cols()) = trapezoid(grids[j]);
    off += c.cols();
  }
  const Matrix cov = x.transpose() * x / static_cast<double>(n - 1);
  const Vector sw = w.cwiseSqrt();
  const Matrix b = sw.asDiagonal() * cov * sw.asDiagonal();
  Eig e = jacobi(b);
  StackedPca out{e.values, sw.cwiseInverse().asDiagonal() * e.vectors, w};
  return out;
}

}  // namespace oracle
