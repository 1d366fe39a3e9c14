#include "doctest.h"

#include "mfpca/error.hpp"
#include "mfpca/rng.hpp"
#include "mfpca/sim.hpp"

#include "json.hpp"

#include <cmath>
#include <set>

using namespace mfpca;
using namespace mfpca::sim;

namespace {

StudyGrid small_grid(std::size_t reps, std::size_t threads = 1) {
  StudyGrid g;
  g.observations = {25};
  g.points = {25, 50};
  g.replications = reps;
  g.base_seed = 7;
  g.threads = threads;
  return g;
}

}  // namespace

TEST_CASE("true eigenvalues") {
  Vector nu = true_eigenvalues(50);
  CHECK(nu.size() == 50);
  CHECK(nu[0] == doctest::Approx(0.3679).epsilon(1e-4));
  CHECK(nu[0] == std::exp(-1.0));
  for (Eigen::Index m = 1; m < 50; ++m) CHECK(nu[m] < nu[m - 1]);
}

TEST_CASE("cut draws") {
  auto rng = make_stream(1, 0, StreamPurpose::Cuts);
  CHECK(draw_cuts(1, 1.0, rng).cuts.empty());
  for (int k = 0; k < 200; ++k) {
    auto d = draw_cuts(5, 1.0, rng);
    REQUIRE(d.cuts.size() == 4);
    double prev = 0;
    for (double c : d.cuts) {
      CHECK(c > 0.0);
      CHECK(c < 1.0);
      CHECK(c - prev >= 0.02);
      prev = c;
    }
    CHECK(1.0 - prev >= 0.02);
  }
  auto a = make_stream(9, 3, StreamPurpose::Cuts);
  auto b = make_stream(9, 3, StreamPurpose::Cuts);
  CHECK(draw_cuts(5, 1.0, a).cuts == draw_cuts(5, 1.0, b).cuts);

  auto e = equal_cuts(5, 1.0);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == doctest::Approx(0.2));
  CHECK(e[3] == doctest::Approx(0.8));
  CHECK(equal_cuts(1, 1.0).empty());
}

TEST_CASE("streams are distinct per purpose and replication") {
  std::set<std::uint64_t> keys;
  for (std::uint64_t rep = 0; rep < 50; ++rep)
    for (auto p : {StreamPurpose::Cuts, StreamPurpose::Signs, StreamPurpose::Scores})
      keys.insert(stream_key(3, rep, p));
  CHECK(keys.size() == 150);
  CHECK(make_stream(3, 1, StreamPurpose::Scores)() != make_stream(3, 2, StreamPurpose::Scores)());
}

TEST_CASE("simulated dataset shape and determinism") {
  SimulationConfig cfg;
  cfg.observations = 30;
  cfg.points = 25;
  cfg.base_seed = 11;
  auto a = simulate_dataset(cfg, 4);
  auto b = simulate_dataset(cfg, 4);
  CHECK(a.sample.features() == 5);
  CHECK(a.sample.observations() == 30);
  CHECK(a.system.size() == 50);
  CHECK(a.signs.size() == 5);
  CHECK(a.cuts.size() == 4);
  for (int s : a.signs) CHECK((s == 1 || s == -1));
  CHECK((a.system.gram() - Matrix::Identity(50, 50)).cwiseAbs().maxCoeff() <= 1e-8);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(a.sample.feature(j).points() == 25);
    CHECK(a.sample.feature(j).values() == b.sample.feature(j).values());
    CHECK(a.sample.feature(j).grid().front() == 0.0);
    CHECK(a.sample.feature(j).grid().back() == 1.0);
  }
  auto c = simulate_dataset(cfg, 5);
  CHECK(c.sample.feature(0).values() != a.sample.feature(0).values());

  cfg.cuts = CutPolicy::Uniform;
  auto u = simulate_dataset(cfg, 4);
  CHECK(u.cuts != a.cuts);
  CHECK((u.system.gram() - Matrix::Identity(50, 50)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("score variances follow the eigenvalue law") {
  SimulationConfig cfg;
  cfg.observations = 10000;
  cfg.points = 50;
  cfg.base_seed = 2;
  auto d = simulate_dataset(cfg, 0);
  for (std::size_t m = 0; m < 5; ++m) {
    const BlockFunction psi = d.system.function(m);
    double sum = 0, sq = 0;
    for (std::size_t i = 0; i < cfg.observations; ++i) {
      BlockFunction x;
      for (std::size_t j = 0; j < 5; ++j)
        x.push_back(d.sample.feature(j).values().row(static_cast<Eigen::Index>(i)).transpose());
      const double r = inner_product_multi(x, psi, d.system.weights);
      sum += r;
      sq += r * r;
    }
    const double n = static_cast<double>(cfg.observations);
    const double var = (sq - sum * sum / n) / (n - 1);
    const double nu = d.eigenvalues[static_cast<Eigen::Index>(m)];
    CHECK(std::abs(var - nu) <= 0.05 * nu);
  }
}

TEST_CASE("config validation") {
  SimulationConfig cfg;
  cfg.observations = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = SimulationConfig{};
  cfg.components = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK(parse_cut_policy("uniform") == CutPolicy::Uniform);
  CHECK(std::string(to_string(CutPolicy::Equal)) == "equal");
  CHECK_THROWS_AS(parse_cut_policy("random"), Error);
}

TEST_CASE("eigenvalue errors") {
  Vector t(3), e(3);
  t << 3, 2, 1;
  CHECK(eigenvalue_errors(t, t, 3).cwiseAbs().maxCoeff() == 0.0);
  e << 0, 4, 1.5;
  Vector err = eigenvalue_errors(t, e, 3);
  CHECK(err[0] == 1.0);
  CHECK(err[1] == 1.0);
  CHECK(err[2] == doctest::Approx(0.25));
  try {
    eigenvalue_errors(t, e, 4);
    FAIL("expected an error");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::Dimension);
  }
}

TEST_CASE("quantiles") {
  std::vector<double> v{5, 1, 4, 2, 3};
  CHECK(quantile(v, 0.5) == 3.0);
  CHECK(quantile(v, 0.25) == 2.0);
  CHECK(quantile({1, 2}, 0.5) == 1.5);
  CHECK(quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75));
  auto b = box_stats({7});
  CHECK(b.min == 7);
  CHECK(b.max == 7);
  CHECK(b.median == 7);
}

TEST_CASE("parallel_for runs every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 5) throw Error(ErrorCode::Config, "boom");
                  }),
                  Error);
}

TEST_CASE("error study smoke run") {
  ErrorStudyConfig cfg;
  cfg.grid = small_grid(1);
  auto r = run_error_study(cfg);
  CHECK(r.replications.size() == 2);
  CHECK(r.summaries.size() == 4);
  for (const auto& rr : r.replications) {
    CHECK(rr.errors.at(5).size() == 25);
    CHECK(rr.errors.at(10).size() == 25);
    CHECK(rr.estimates.at(5).size() == 25);
    CHECK(rr.estimates.at(10).size() == 50);
    CHECK(rr.univariate_cap == 24);
    for (double e : rr.errors.at(5)) CHECK(e >= 0.0);
  }
  const auto& s = r.summary({25, 25}, 5);
  CHECK(s.per_component.size() == 25);
  CHECK(s.per_component[0].min == s.per_component[0].max);

  std::string csv = error_boxplot_csv(r);
  CHECK(csv.rfind("# mfpca", 0) == 0);
  CHECK(csv.find("N,S,M_j,m,quantile,value\n") != std::string::npos);
  auto j = nlohmann::json::parse(error_json(r));
  CHECK(j["results"]["25"]["50"]["10"].size() == 25);

  ErrorStudyConfig bad = cfg;
  bad.error_components = 30;
  bad.truncations = {5};
  CHECK_THROWS_AS(run_error_study(bad), Error);
  bad = cfg;
  bad.truncations = {30};
  try {
    run_error_study(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Truncation);
  }
}

TEST_CASE("npc study counts and determinism across threads") {
  NpcStudyConfig cfg;
  cfg.grid = small_grid(6, 1);
  auto one = run_npc_study(cfg);
  cfg.grid.threads = 3;
  auto three = run_npc_study(cfg);
  CHECK(npc_counts_csv(one) == npc_counts_csv(three));
  CHECK(npc_json(one) == npc_json(three));
  CHECK(npc_replications_csv(one) == npc_replications_csv(three));

  for (const auto& s : one.summaries) {
    std::size_t total = 0;
    for (auto& [k, c] : s.counts) total += c;
    CHECK(total == 6);
  }
  CHECK(one.summary({25, 25}, 90).true_npc == 5);
  CHECK(one.summary({25, 25}, 99).true_npc == 10);
  for (const auto& r : one.replications) {
    std::size_t prev = 0;
    for (auto& [a, n] : r.npc) {
      CHECK(n >= prev);
      CHECK(n >= 1);
      prev = n;
    }
  }
  // threads never appear in outputs
  CHECK(npc_counts_csv(one).find("thread") == std::string::npos);

  NpcStudyConfig bad = cfg;
  bad.alphas = {0};
  CHECK_THROWS_AS(run_npc_study(bad), Error);
  bad = cfg;
  bad.grid.replications = 0;
  CHECK_THROWS_AS(run_npc_study(bad), Error);
}

TEST_CASE("study modal counts at alpha 50 for the smallest cell") {
  // smaller replication count than the full study; only the mode is checked
  NpcStudyConfig cfg;
  cfg.grid.observations = {25};
  cfg.grid.points = {25};
  cfg.grid.replications = 60;
  cfg.grid.base_seed = 1;
  cfg.alphas = {50, 90};
  auto r = run_npc_study(cfg);
  CHECK(r.summary({25, 25}, 50).mode() == 1);
  CHECK(r.summary({25, 25}, 90).true_npc == 5);
}
