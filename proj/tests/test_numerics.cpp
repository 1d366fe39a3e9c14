#include "doctest.h"
#include "oracles.hpp"

#include "mfpca/error.hpp"
#include "mfpca/numerics.hpp"

#include <cmath>
#include <random>

using namespace mfpca;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_psd(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix b(n, n);
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = z(rng);
  return b * b.transpose();
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(SampledGrid({0.0, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(SampledGrid({0.0, std::nan(""), 1.0}), Error);
  CHECK_THROWS_AS(SampledGrid(std::vector<double>{}), Error);
  SampledGrid g = SampledGrid::uniform(0, 1, 5);
  CHECK(g.size() == 5);
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK(g.back() == 1.0);
}

TEST_CASE("trapezoid weights") {
  auto w = trapezoid_weights(SampledGrid({0.0, 0.5, 1.0})).weights;
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.5));
  CHECK(w[2] == doctest::Approx(0.25));

  w = trapezoid_weights(SampledGrid({0.0, 1.0})).weights;
  CHECK(w[0] == 0.5);
  CHECK(w[1] == 0.5);

  w = trapezoid_weights(SampledGrid::uniform(0, 1, 101)).weights;
  CHECK(w[0] == doctest::Approx(0.005));
  CHECK(w[100] == doctest::Approx(0.005));
  for (Eigen::Index i = 1; i < 100; ++i) CHECK(w[i] == doctest::Approx(0.01));
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-14));

  try {
    trapezoid_weights(SampledGrid({0.3}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidGrid);
  }
}

TEST_CASE("trapezoid error on quadratics shrinks with h^2") {
  // integral of 3t^2 - 2t + 1 over [0,1] is 1
  double prev = 0;
  for (std::size_t s : {11u, 21u, 41u, 81u}) {
    SampledGrid g = SampledGrid::uniform(0, 1, s);
    auto w = trapezoid_weights(g).weights;
    double sum = 0;
    for (std::size_t i = 0; i < s; ++i) sum += w[static_cast<Eigen::Index>(i)] * (3 * g[i] * g[i] - 2 * g[i] + 1);
    const double err = std::abs(sum - 1.0);
    const double h = 1.0 / static_cast<double>(s - 1);
    CHECK(err <= 0.5 * h * h + 1e-14);
    if (prev > 0) CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("sym_eig small cases") {
  auto r = sym_eig(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(r.eigenvalues[i] == doctest::Approx(1.0));

  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  r = sym_eig(a);
  CHECK(r.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(1.0));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(r.eigenvectors(0, 0)) == doctest::Approx(h));
  CHECK(r.eigenvectors(0, 0) * r.eigenvectors(1, 0) > 0);
  CHECK(r.eigenvectors(0, 1) * r.eigenvectors(1, 1) < 0);
}

TEST_CASE("sym_eig matches the Jacobi oracle") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    Matrix a = random_psd(10, seed);
    auto r = sym_eig(a);
    auto o = oracle::jacobi(a);
    for (Eigen::Index i = 0; i < 10; ++i) {
      CHECK(std::abs(r.eigenvalues[i] - o.values[i]) <= 1e-8 * std::abs(o.values[i]) + 1e-12);
      // eigenvectors agree up to sign
      CHECK(std::abs(std::abs(r.eigenvectors.col(i).dot(o.vectors.col(i))) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("sym_eig trace and orthonormality") {
  for (std::size_t n : {1u, 7u, 60u, 500u}) {
    Matrix a = random_psd(n, static_cast<unsigned>(n));
    a.diagonal().array() -= static_cast<double>(n);  // indefinite
    auto r = sym_eig(a);
    CHECK(std::abs(r.eigenvalues.sum() - a.trace()) <= 1e-8 * std::max(1.0, a.cwiseAbs().diagonal().sum()));
    const Matrix defect = r.eigenvectors.transpose() * r.eigenvectors - Matrix::Identity(n, n);
    CHECK(max_abs(defect) <= 1e-10);
    for (Eigen::Index i = 1; i < r.eigenvalues.size(); ++i) CHECK(r.eigenvalues[i - 1] >= r.eigenvalues[i]);
  }
}

TEST_CASE("sym_eig symmetrises and rejects bad input") {
  Matrix a(2, 2);
  a << 2, 1 + 1e-12, 1, 2;
  CHECK(sym_eig(a).eigenvalues[0] == doctest::Approx(3.0));

  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(sym_eig(rect), Error);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 1) = std::nan("");
  try {
    sym_eig(nan);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMatrix);
  }
  CHECK_THROWS_AS(sym_eig(Matrix(0, 0)), Error);
}

TEST_CASE("sym_eig reports real negatives, clamp only fixes tiny ones") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = -1e-13;
  a(2, 2) = -0.5;
  auto r = sym_eig(a);
  CHECK(r.eigenvalues[2] == doctest::Approx(-0.5));
  Vector c = clamp_tiny_negatives(r.eigenvalues, 1.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == doctest::Approx(-0.5));
}

TEST_CASE("gram matrix") {
  SampledGrid g = SampledGrid::uniform(0, 1, 11);
  auto w = trapezoid_weights(g);
  Matrix one = Matrix::Ones(11, 1);
  CHECK(gram_matrix(one, w)(0, 0) == doctest::Approx(1.0));

  Matrix f(11, 2);
  for (Eigen::Index i = 0; i < 11; ++i) {
    f(i, 0) = std::sin(static_cast<double>(i));
    f(i, 1) = 2 * f(i, 0);
  }
  Matrix gm = gram_matrix(f, w);
  const double a = gm(0, 0);
  CHECK(gm(0, 1) == doctest::Approx(2 * a));
  CHECK(gm(1, 0) == doctest::Approx(2 * a));
  CHECK(gm(1, 1) == doctest::Approx(4 * a));
  CHECK(std::abs(gm.determinant()) < 1e-12);

  CHECK_THROWS_AS(gram_matrix(Matrix::Ones(5, 1), w), Error);
  std::vector<Vector> cols{Vector::Ones(11), Vector::Ones(10)};
  CHECK_THROWS_AS(gram_matrix(std::span<const Vector>(cols), w), Error);
}

TEST_CASE("canonical sign") {
  Vector f(3);
  f << 0, -3, 1;
  Vector expect(3);
  expect << 0, 3, -1;
  CHECK(canonical_sign(f) == expect);

  f << 1, 2, 0.5;
  CHECK(canonical_sign(f) == f);

  f << -2, 2, 1;
  expect << 2, -2, -1;
  CHECK(canonical_sign(f) == expect);
  CHECK(canonical_sign(canonical_sign(f)) == canonical_sign(f));

  try {
    canonical_sign(Vector::Zero(4));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFunction);
  }
}

TEST_CASE("canonical sign is idempotent on random vectors") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (int k = 0; k < 50; ++k) {
    Vector f(9);
    for (auto& x : f) x = z(rng);
    const Vector once = canonical_sign(f);
    CHECK(canonical_sign(once) == once);
    Eigen::Index idx;
    once.cwiseAbs().maxCoeff(&idx);
    CHECK(once[idx] > 0);
  }
}
