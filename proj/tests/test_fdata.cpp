#include "doctest.h"

#include "mfpca/basis.hpp"
#include "mfpca/error.hpp"
#include "mfpca/fdata.hpp"
#include "mfpca/weather.hpp"

#include <cmath>
#include <random>

using namespace mfpca;

namespace {

SampledGrid unit(std::size_t s) { return SampledGrid::uniform(0, 1, s); }

Matrix random_curves(std::size_t n, std::size_t s, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix x(n, s);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = z(rng) + 0.3 * static_cast<double>(j);
  return x;
}

}  // namespace

TEST_CASE("sample construction checks shapes") {
  CHECK_THROWS_AS(UnivariateFunctionalSample(unit(5), Matrix::Zero(3, 4)), Error);
  UnivariateFunctionalSample a(unit(5), Matrix::Zero(3, 5), 0);
  UnivariateFunctionalSample b(unit(7), Matrix::Zero(4, 7), 1);
  CHECK_THROWS_AS(MultivariateFunctionalSample({a, b}), Error);
  UnivariateFunctionalSample c(unit(7), Matrix::Zero(3, 7), 1);
  MultivariateFunctionalSample ok({a, c});
  CHECK(ok.features() == 2);
  CHECK(ok.observations() == 3);
  CHECK(ok.feature(1).points() == 7);
}

TEST_CASE("univariate inner product") {
  SampledGrid g = unit(1001);
  auto w = trapezoid_weights(g);
  CHECK(inner_product_uni(Vector::Ones(1001), Vector::Ones(1001), w) == doctest::Approx(1.0));
  Matrix f = fourier_basis(4, g);
  CHECK(std::abs(inner_product_uni(f.col(1), f.col(2), w)) <= 1e-4);
  CHECK(inner_product_uni(Vector::Zero(1001), f.col(3), w) == 0.0);
  try {
    inner_product_uni(Vector::Ones(3), Vector::Ones(1001), w);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Dimension);
  }
}

TEST_CASE("multivariate inner product") {
  std::vector<QuadratureWeights> w{trapezoid_weights(unit(11)), trapezoid_weights(unit(21)),
                                   trapezoid_weights(unit(31))};
  const double c = 1.0 / std::sqrt(3.0);
  BlockFunction f{Vector::Constant(11, c), Vector::Constant(21, c), Vector::Constant(31, c)};
  CHECK(inner_product_multi(f, f, w) == doctest::Approx(1.0));
  BlockFunction zero{Vector::Zero(11), Vector::Zero(21), Vector::Zero(31)};
  CHECK(inner_product_multi(f, zero, w) == 0.0);
  BlockFunction short_f{f[0], f[1]};
  CHECK_THROWS_AS(inner_product_multi(short_f, f, w), Error);
  BlockFunction bad{Vector::Zero(11), Vector::Zero(20), Vector::Zero(31)};
  CHECK_THROWS_AS(inner_product_multi(bad, f, w), Error);

  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  for (int k = 0; k < 20; ++k) {
    BlockFunction r{Vector(11), Vector(21), Vector(31)};
    for (auto& b : r)
      for (auto& x : b) x = z(rng);
    double sum = 0;
    for (std::size_t j = 0; j < 3; ++j) sum += inner_product_uni(r[j], r[j], w[j]);
    CHECK(inner_product_multi(r, r, w) >= 0.0);
    CHECK(inner_product_multi(r, r, w) == doctest::Approx(sum).epsilon(1e-15));
  }

  // p = 1 is bit-identical to the univariate product
  BlockFunction g1{Vector::LinSpaced(11, 0, 2)};
  BlockFunction f1{Vector::LinSpaced(11, -1, 3)};
  std::vector<QuadratureWeights> w1{w[0]};
  CHECK(inner_product_multi(f1, g1, w1) == inner_product_uni(f1[0], g1[0], w[0]));
}

TEST_CASE("centering") {
  Vector f = Vector::LinSpaced(9, -1, 3);
  Matrix same(2, 9);
  same.row(0) = f.transpose();
  same.row(1) = f.transpose();
  auto c = center(MultivariateFunctionalSample({UnivariateFunctionalSample(unit(9), same)}));
  CHECK((c.mean.per_feature[0] - f).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(c.sample.feature(0).values().cwiseAbs().maxCoeff() == 0.0);

  Matrix pm(2, 9);
  pm.row(0) = f.transpose();
  pm.row(1) = -f.transpose();
  c = center(MultivariateFunctionalSample({UnivariateFunctionalSample(unit(9), pm)}));
  CHECK(c.mean.per_feature[0].cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.sample.feature(0).values() == pm);

  Matrix one = Matrix::Ones(1, 9);
  try {
    center(MultivariateFunctionalSample({UnivariateFunctionalSample(unit(9), one)}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
}

TEST_CASE("centering is idempotent") {
  MultivariateFunctionalSample s({UnivariateFunctionalSample(unit(13), random_curves(20, 13, 1), 0),
                                  UnivariateFunctionalSample(unit(8), random_curves(20, 8, 2), 1)});
  auto once = center(s);
  auto twice = center(once.sample);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(once.sample.feature(j).values().colwise().mean().cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((twice.sample.feature(j).values() - once.sample.feature(j).values()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("centered weather temperature has zero column means") {
  auto data = weather::load_weather_dir(MFPCA_DATA_DIR);
  auto c = center(data.sample());
  const Matrix& t = c.sample.feature(0).values();
  // recompute from the raw matrix
  Vector mean = data.temperature.colwise().mean().transpose();
  CHECK((c.mean.per_feature[0] - mean).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(t.colwise().mean().cwiseAbs().maxCoeff() <= 1e-12);
}
