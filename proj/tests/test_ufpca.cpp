#include "doctest.h"

#include "mfpca/basis.hpp"
#include "mfpca/error.hpp"
#include "mfpca/ufpca.hpp"

#include <cmath>
#include <random>

using namespace mfpca;

namespace {

SampledGrid unit(std::size_t s) { return SampledGrid::uniform(0, 1, s); }

// n curves sum_k sqrt(lambda_k) z_k f_k with f_k the first Fourier functions.
Matrix kl_sample(std::size_t n, const SampledGrid& g, const std::vector<double>& lambda,
                 unsigned seed) {
  Matrix f = fourier_basis(lambda.size(), g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix x = Matrix::Zero(n, g.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < lambda.size(); ++k)
      x.row(static_cast<Eigen::Index>(i)) +=
          std::sqrt(lambda[k]) * z(rng) * f.col(static_cast<Eigen::Index>(k)).transpose();
  return x;
}

UnivariateFunctionalSample centered(const SampledGrid& g, Matrix x) {
  x.rowwise() -= x.colwise().mean();
  return UnivariateFunctionalSample(g, std::move(x));
}

}  // namespace

TEST_CASE("covariance of a two-curve sample") {
  SampledGrid g = unit(7);
  Vector f = Vector::LinSpaced(7, 1, 2);
  Matrix x(2, 7);
  x.row(0) = f.transpose();
  x.row(1) = -f.transpose();
  auto cov = estimate_covariance(UnivariateFunctionalSample(g, x));
  CHECK((cov.values - 2.0 * f * f.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(cov.observations == 2);

  Matrix same = Matrix::Zero(4, 7);
  CHECK(estimate_covariance(UnivariateFunctionalSample(g, same)).values.cwiseAbs().maxCoeff() == 0.0);

  try {
    estimate_covariance(UnivariateFunctionalSample(g, Matrix::Ones(1, 7)));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
}

TEST_CASE("covariance matches direct summation and converges") {
  SampledGrid g = unit(31);
  const std::vector<double> lambda{4, 2, 1};
  Matrix f = fourier_basis(3, g);
  Matrix truth = Matrix::Zero(31, 31);
  for (int k = 0; k < 3; ++k) truth += lambda[static_cast<std::size_t>(k)] * f.col(k) * f.col(k).transpose();
  double prev = 1e300;
  for (std::size_t n : {100u, 1000u, 10000u}) {
    auto s = centered(g, kl_sample(n, g, lambda, 9));
    auto cov = estimate_covariance(s);
    Matrix direct = Matrix::Zero(31, 31);
    for (std::size_t a = 0; a < 31; ++a)
      for (std::size_t b = 0; b < 31; ++b) {
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i)
          sum += s.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) *
                 s.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b));
        direct(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum / static_cast<double>(n - 1);
      }
    CHECK((cov.values - direct).cwiseAbs().maxCoeff() <= 1e-10 * direct.cwiseAbs().maxCoeff());
    const double err = (cov.values - truth).cwiseAbs().maxCoeff();
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.5);
}

TEST_CASE("rank-one covariance") {
  SampledGrid g = unit(201);
  auto w = trapezoid_weights(g);
  Vector f = fourier_basis(3, g).col(2);
  CovarianceSurface cov{2.0 * f * f.transpose(), g, 10};
  auto es = eigendecompose_covariance(cov, w, 1);
  CHECK(es.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::min((es.eigenfunctions.col(0) - f).cwiseAbs().maxCoeff(),
                 (es.eigenfunctions.col(0) + f).cwiseAbs().maxCoeff()) <= 1e-8);
  for (Eigen::Index k = 1; k < es.full_spectrum.size(); ++k) CHECK(std::abs(es.full_spectrum[k]) <= 1e-10);
}

TEST_CASE("constructed spectrum (4,2,1)") {
  SampledGrid g = unit(401);
  auto w = trapezoid_weights(g);
  Matrix f = fourier_basis(3, g);
  Matrix c = 4 * f.col(0) * f.col(0).transpose() + 2 * f.col(1) * f.col(1).transpose() +
             f.col(2) * f.col(2).transpose();
  auto es = eigendecompose_covariance(CovarianceSurface{c, g, 100}, w, 3);
  CHECK(es.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(es.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(es.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-4));
  const Matrix gram = gram_matrix(es.eigenfunctions, w);
  CHECK((gram - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
  for (Eigen::Index m = 0; m < 3; ++m) CHECK(!needs_sign_flip(es.eigenfunctions.col(m)));
}

TEST_CASE("truncation bounds") {
  SampledGrid g = unit(10);
  auto s = centered(g, kl_sample(6, g, {3, 1}, 1));
  auto cov = estimate_covariance(s);
  auto w = trapezoid_weights(g);
  for (std::size_t bad : {0u, 6u, 11u}) {
    try {
      eigendecompose_covariance(cov, w, bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Truncation);
    }
  }
  auto es = eigendecompose_covariance(cov, w, 5);
  CHECK(es.full_spectrum.size() == 5);
  CHECK(max_truncation(6, 10) == 5);
  CHECK(max_truncation(100, 25) == 25);
}

TEST_CASE("scores") {
  SampledGrid g = unit(101);
  auto s = centered(g, kl_sample(40, g, {3, 2, 1}, 3));
  auto es = univariate_fpca(s, 3);
  Matrix x(2, 101);
  x.row(0) = 3.0 * es.eigenfunctions.col(0).transpose();
  x.row(1).setZero();
  Matrix xi = uni_scores(UnivariateFunctionalSample(g, x), es);
  CHECK(xi(0, 0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(xi(0, 1)) <= 1e-10);
  CHECK(std::abs(xi(0, 2)) <= 1e-10);
  CHECK(xi.row(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(uni_scores(UnivariateFunctionalSample(unit(50), Matrix::Zero(2, 50)), es), Error);
}

TEST_CASE("score variances approach eigenvalues") {
  SampledGrid g = unit(101);
  const std::vector<double> lambda{3, 2, 1};
  auto s = centered(g, kl_sample(2000, g, lambda, 17));
  auto es = univariate_fpca(s, 3);
  Matrix xi = uni_scores(s, es);
  for (Eigen::Index m = 0; m < 3; ++m) {
    const double var = xi.col(m).squaredNorm() / 1999.0;
    CHECK(std::abs(var - lambda[static_cast<std::size_t>(m)]) <= 0.1 * lambda[static_cast<std::size_t>(m)]);
  }
}

TEST_CASE("full-rank identities") {
  SampledGrid g = SampledGrid({0.0, 0.05, 0.2, 0.3, 0.45, 0.5, 0.62, 0.8, 0.9, 1.0});
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  for (std::size_t n : {6u, 30u}) {
    Matrix x(n, 10);
    for (auto& v : x.reshaped()) v = z(rng);
    auto s = centered(g, x);
    const std::size_t m = max_truncation(n, 10);
    auto es = univariate_fpca(s, m);
    auto cov = estimate_covariance(s);
    auto w = s.weights().weights;

    CHECK((gram_matrix(es.eigenfunctions, s.weights()) - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-6);
    const double trace = w.dot(cov.values.diagonal());
    CHECK(std::abs(es.full_spectrum.sum() - trace) <= 1e-8 * trace);

    Matrix xi = uni_scores(s, es);
    Matrix sc = xi.transpose() * xi / static_cast<double>(n - 1);
    const double scale = es.eigenvalues[0];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const double expect = a == b ? es.eigenvalues[static_cast<Eigen::Index>(a)] : 0.0;
        CHECK(std::abs(sc(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - expect) <= 1e-8 * scale);
      }

    Matrix recon = xi * es.eigenfunctions.transpose();
    CHECK((recon - s.values()).cwiseAbs().maxCoeff() <= 1e-8 * s.values().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("truncate keeps the leading components") {
  SampledGrid g = unit(30);
  auto s = centered(g, kl_sample(20, g, {5, 3, 2, 1}, 8));
  auto es = univariate_fpca(s, 4);
  auto t = truncate(es, 2);
  CHECK(t.truncation() == 2);
  CHECK(t.eigenvalues == es.eigenvalues.head(2));
  CHECK(t.full_spectrum == es.full_spectrum);
  CHECK_THROWS_AS(truncate(es, 5), Error);
}

TEST_CASE("select M by variance explained") {
  Vector one(1);
  one << 1;
  for (double a : {1.0, 50.0, 99.0, 100.0}) CHECK(select_M_by_pve(one, a) == 1);
  Vector l(2);
  l << 3, 1;
  CHECK(select_M_by_pve(l, 70) == 1);
  CHECK(select_M_by_pve(l, 75) == 1);
  CHECK(select_M_by_pve(l, 80) == 2);
  CHECK(select_M_by_pve(l, 100) == 2);

  try {
    select_M_by_pve(Vector::Zero(3), 50);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSpectrum);
  }
  CHECK_THROWS_AS(select_M_by_pve(l, 0), Error);
  CHECK_THROWS_AS(select_M_by_pve(l, 100.5), Error);
}
