#include "mfpca/sim.hpp"

#include "mfpca/error.hpp"
#include "mfpca/format.hpp"
#include "mfpca/mfpca.hpp"
#include "mfpca/rng.hpp"
#include "mfpca/ufpca.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace mfpca::sim {

const char* to_string(CutPolicy policy) noexcept {
  return policy == CutPolicy::Equal ? "equal" : "uniform";
}

CutPolicy parse_cut_policy(const std::string& text) {
  if (text == "equal") return CutPolicy::Equal;
  if (text == "uniform") return CutPolicy::Uniform;
  throw Error(ErrorCode::Config, "unknown cut policy '" + text + "' (expected equal or uniform)");
}

void SimulationConfig::validate() const {
  if (observations < 2) throw Error(ErrorCode::Config, "N must be at least 2");
  if (points < 2) throw Error(ErrorCode::Config, "S must be at least 2");
  if (features < 1) throw Error(ErrorCode::Config, "p must be at least 1");
  if (components < 1) throw Error(ErrorCode::Config, "M must be at least 1");
  if (!(total_length > 0.0)) throw Error(ErrorCode::Config, "T must be positive");
  if (master_oversampling < 1) throw Error(ErrorCode::Config, "master oversampling must be >= 1");
  if (cuts == CutPolicy::Uniform &&
      !(min_cut_spacing >= 0.0 && min_cut_spacing * static_cast<double>(features) < 1.0)) {
    throw Error(ErrorCode::Config, "minimum cut spacing leaves no admissible cuts");
  }
}

Vector true_eigenvalues(std::size_t count) {
  Vector nu(static_cast<Eigen::Index>(count));
  for (std::size_t m = 1; m <= count; ++m) {
    nu[static_cast<Eigen::Index>(m - 1)] = std::exp(-(static_cast<double>(m) + 1.0) / 2.0);
  }
  return nu;
}

CutDraw draw_cuts(std::size_t features, double total_length, std::mt19937_64& rng,
                  double min_spacing) {
  CutDraw draw;
  if (features <= 1) return draw;
  std::uniform_real_distribution<double> unif(0.0, total_length);
  const double guard = min_spacing * total_length;
  for (;;) {
    draw.cuts.assign(features - 1, 0.0);
    for (auto& c : draw.cuts) c = unif(rng);
    std::sort(draw.cuts.begin(), draw.cuts.end());
    bool ok = draw.cuts.front() - 0.0 >= guard && total_length - draw.cuts.back() >= guard &&
              draw.cuts.front() > 0.0;
    for (std::size_t i = 1; ok && i < draw.cuts.size(); ++i) {
      ok = draw.cuts[i] - draw.cuts[i - 1] >= guard && draw.cuts[i] > draw.cuts[i - 1];
    }
    if (ok) return draw;
    ++draw.redraws;
  }
}

std::vector<double> equal_cuts(std::size_t features, double total_length) {
  std::vector<double> cuts;
  for (std::size_t j = 1; j < features; ++j) {
    cuts.push_back(total_length * static_cast<double>(j) / static_cast<double>(features));
  }
  return cuts;
}

SimulatedDataset simulate_dataset(const SimulationConfig& cfg, std::uint64_t replication) {
  cfg.validate();
  SplitSystemSpec spec;
  spec.total_length = cfg.total_length;
  std::size_t redraws = 0;
  if (cfg.cuts == CutPolicy::Equal) {
    spec.cuts = equal_cuts(cfg.features, cfg.total_length);
  } else {
    auto rng = make_stream(cfg.base_seed, replication, StreamPurpose::Cuts);
    CutDraw draw = draw_cuts(cfg.features, cfg.total_length, rng, cfg.min_cut_spacing);
    spec.cuts = std::move(draw.cuts);
    redraws = draw.redraws;
  }
  {
    auto rng = make_stream(cfg.base_seed, replication, StreamPurpose::Signs);
    std::bernoulli_distribution flip(0.5);
    for (std::size_t j = 0; j < cfg.features; ++j) spec.signs.push_back(flip(rng) ? -1 : 1);
  }
  const SampledGrid feature_grid = SampledGrid::uniform(0.0, 1.0, cfg.points);
  spec.grids.assign(cfg.features, feature_grid);

  const SampledGrid master =
      SampledGrid::uniform(0.0, cfg.total_length, cfg.master_oversampling * cfg.points);
  const Matrix psi = fourier_basis(cfg.components, master);
  MultivariateBasisSystem system = split_system(psi, master, spec);

  const Vector nu = true_eigenvalues(cfg.components);
  const auto n = static_cast<Eigen::Index>(cfg.observations);
  const auto m = static_cast<Eigen::Index>(cfg.components);
  Matrix rho(n, m);
  {
    auto rng = make_stream(cfg.base_seed, replication, StreamPurpose::Scores);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < m; ++k) rho(i, k) = gauss(rng) * std::sqrt(nu[k]);
    }
  }

  std::vector<UnivariateFunctionalSample> features;
  for (std::size_t j = 0; j < cfg.features; ++j) {
    features.emplace_back(feature_grid, rho * system.blocks[j].transpose(), j);
  }
  return {MultivariateFunctionalSample(std::move(features)), std::move(system), nu, spec.cuts,
          spec.signs, redraws};
}

Vector eigenvalue_errors(const Vector& truth, const Vector& estimate, std::size_t count) {
  if (count > static_cast<std::size_t>(truth.size()) ||
      count > static_cast<std::size_t>(estimate.size())) {
    throw Error(ErrorCode::Dimension, "requested " + std::to_string(count) +
                                          " errors from spectra of length " +
                                          std::to_string(truth.size()) + " and " +
                                          std::to_string(estimate.size()));
  }
  Vector err(static_cast<Eigen::Index>(count));
  for (Eigen::Index k = 0; k < err.size(); ++k) {
    const double d = truth[k] - estimate[k];
    err[k] = d * d / (truth[k] * truth[k]);
  }
  return err;
}

std::vector<Cell> StudyGrid::cells() const {
  std::vector<Cell> out;
  for (std::size_t n : observations) {
    for (std::size_t s : points) out.push_back({n, s});
  }
  return out;
}

SimulationConfig StudyGrid::config_for(const Cell& cell) const {
  SimulationConfig cfg;
  cfg.observations = cell.observations;
  cfg.points = cell.points;
  cfg.cuts = cuts;
  cfg.base_seed = base_seed;
  return cfg;
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw Error(ErrorCode::InsufficientData, "quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BoxStats box_stats(const std::vector<double>& values) {
  return {quantile(values, 0.0), quantile(values, 0.25), quantile(values, 0.5),
          quantile(values, 0.75), quantile(values, 1.0)};
}

const ErrorCellSummary& ErrorStudyReport::summary(const Cell& cell, std::size_t truncation) const {
  for (const auto& s : summaries) {
    if (s.cell == cell && s.truncation == truncation) return s;
  }
  throw Error(ErrorCode::Config, "no error summary for the requested cell");
}

std::vector<double> ErrorStudyReport::errors(const Cell& cell, std::size_t truncation,
                                             std::size_t m) const {
  std::vector<double> out;
  for (const auto& r : replications) {
    if (r.cell == cell) out.push_back(r.errors.at(truncation)[static_cast<Eigen::Index>(m - 1)]);
  }
  return out;
}

std::size_t NpcCellSummary::mode() const {
  std::size_t best = 0;
  std::size_t best_count = 0;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  }
  return best;
}

const NpcCellSummary& NpcStudyReport::summary(const Cell& cell, double alpha) const {
  for (const auto& s : summaries) {
    if (s.cell == cell && s.alpha == alpha) return s;
  }
  throw Error(ErrorCode::Config, "no NPC summary for the requested cell");
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct UnivariateFull {
  std::vector<UnivariateEigenSystem> systems;
  std::vector<Matrix> scores;  // N x truncation, full width
  std::vector<Vector> spectra;  // clamped full spectra
};

UnivariateFull univariate_stage(const SimulatedDataset& data, std::size_t truncation) {
  const CenteredSample centered = center(data.sample);
  UnivariateFull out;
  for (const auto& feat : centered.sample.all()) {
    out.systems.push_back(univariate_fpca(feat, truncation));
    const auto& es = out.systems.back();
    out.scores.push_back(uni_scores(feat, es));
    Vector spectrum = clamp_tiny_negatives(es.full_spectrum, es.full_spectrum.cwiseAbs().maxCoeff());
    out.spectra.push_back(spectrum.cwiseMax(0.0));
  }
  return out;
}

Vector combined_spectrum(const UnivariateFull& uni, const std::vector<std::size_t>& truncations) {
  std::vector<UnivariateEigenSystem> systems;
  std::vector<Matrix> scores;
  for (std::size_t j = 0; j < uni.systems.size(); ++j) {
    systems.push_back(truncate(uni.systems[j], truncations[j]));
    scores.push_back(uni.scores[j].leftCols(static_cast<Eigen::Index>(truncations[j])));
  }
  return mfpca_combine(systems, assemble_scores(scores)).eigenvalues;
}

ReplicationResult base_result(const SimulatedDataset& data, const Cell& cell, std::size_t rep) {
  ReplicationResult r;
  r.replication = rep;
  r.cell = cell;
  r.cuts = data.cuts;
  r.signs = data.signs;
  r.cut_redraws = data.cut_redraws;
  r.univariate_cap = max_truncation(cell.observations, cell.points);
  return r;
}

void check_grid(const StudyGrid& grid) {
  if (grid.observations.empty() || grid.points.empty()) {
    throw Error(ErrorCode::Config, "study grid needs at least one N and one S value");
  }
  if (grid.replications < 1) throw Error(ErrorCode::Config, "replications must be positive");
  for (const Cell& c : grid.cells()) grid.config_for(c).validate();
}

}  // namespace

ErrorStudyReport run_error_study(const ErrorStudyConfig& cfg) {
  check_grid(cfg.grid);
  if (cfg.truncations.empty()) throw Error(ErrorCode::Config, "no truncation levels requested");
  const std::size_t p = SimulationConfig{}.features;
  const std::size_t max_mj = *std::max_element(cfg.truncations.begin(), cfg.truncations.end());
  for (std::size_t mj : cfg.truncations) {
    if (mj < 1) throw Error(ErrorCode::Config, "truncation levels must be positive");
    if (cfg.error_components > mj * p) {
      throw Error(ErrorCode::Config, "M_j = " + std::to_string(mj) + " yields only " +
                                         std::to_string(mj * p) + " components, " +
                                         std::to_string(cfg.error_components) + " requested");
    }
  }
  if (cfg.error_components > SimulationConfig{}.components) {
    throw Error(ErrorCode::Config, "more error components than true components");
  }
  for (const Cell& c : cfg.grid.cells()) {
    if (max_mj > max_truncation(c.observations, c.points)) {
      throw Error(ErrorCode::Truncation, "M_j = " + std::to_string(max_mj) +
                                             " exceeds min(N-1, S) for N=" +
                                             std::to_string(c.observations) +
                                             ", S=" + std::to_string(c.points));
    }
  }

  const std::vector<Cell> cells = cfg.grid.cells();
  const std::size_t reps = cfg.grid.replications;
  ErrorStudyReport report;
  report.config = cfg;
  report.replications.resize(cells.size() * reps);

  parallel_for(report.replications.size(), cfg.grid.threads, [&](std::size_t task) {
    const Cell& cell = cells[task / reps];
    const std::size_t rep = task % reps;
    const SimulationConfig sc = cfg.grid.config_for(cell);
    const SimulatedDataset data = simulate_dataset(sc, rep);
    const UnivariateFull uni = univariate_stage(data, max_mj);
    ReplicationResult r = base_result(data, cell, rep);
    for (std::size_t mj : cfg.truncations) {
      Vector est = combined_spectrum(uni, std::vector<std::size_t>(sc.features, mj));
      r.errors[mj] = eigenvalue_errors(data.eigenvalues, est, cfg.error_components);
      r.estimates[mj] = std::move(est);
    }
    report.replications[task] = std::move(r);
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t mj : cfg.truncations) {
      ErrorCellSummary s{cells[c], mj, {}};
      for (std::size_t m = 1; m <= cfg.error_components; ++m) {
        s.per_component.push_back(box_stats(report.errors(cells[c], mj, m)));
      }
      report.summaries.push_back(std::move(s));
    }
  }
  return report;
}

NpcStudyReport run_npc_study(const NpcStudyConfig& cfg) {
  check_grid(cfg.grid);
  if (cfg.alphas.empty()) throw Error(ErrorCode::Config, "no variance levels requested");
  for (double a : cfg.alphas) {
    if (!(a > 0.0) || a > 100.0) throw Error(ErrorCode::Config, "variance levels must lie in (0, 100]");
  }
  const std::vector<Cell> cells = cfg.grid.cells();
  const std::size_t reps = cfg.grid.replications;
  NpcStudyReport report;
  report.config = cfg;
  report.replications.resize(cells.size() * reps);

  parallel_for(report.replications.size(), cfg.grid.threads, [&](std::size_t task) {
    const Cell& cell = cells[task / reps];
    const std::size_t rep = task % reps;
    const SimulationConfig sc = cfg.grid.config_for(cell);
    const SimulatedDataset data = simulate_dataset(sc, rep);
    const UnivariateFull uni =
        univariate_stage(data, max_truncation(cell.observations, cell.points));
    ReplicationResult r = base_result(data, cell, rep);
    for (double alpha : cfg.alphas) {
      std::vector<std::size_t> chosen;
      for (const auto& spectrum : uni.spectra) chosen.push_back(select_M_by_pve(spectrum, alpha));
      const Vector est = combined_spectrum(uni, chosen);
      r.npc[alpha] = npc(est, alpha);
      r.chosen_truncations[alpha] = std::move(chosen);
    }
    report.replications[task] = std::move(r);
  });

  const Vector truth = true_eigenvalues(SimulationConfig{}.components);
  for (const Cell& cell : cells) {
    for (double alpha : cfg.alphas) {
      NpcCellSummary s{cell, alpha, npc(truth, alpha), {}};
      for (const auto& r : report.replications) {
        if (r.cell == cell) ++s.counts[r.npc.at(alpha)];
      }
      report.summaries.push_back(std::move(s));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

std::string list_text(const std::vector<std::size_t>& v) {
  return join_map(v, ";", [](std::size_t x) { return std::to_string(x); });
}

std::string list_text(const std::vector<double>& v) {
  return join_map(v, ";", [](double x) { return format_double(x); });
}

std::string signs_text(const std::vector<int>& v) {
  return join_map(v, ";", [](int x) { return std::to_string(x); });
}

nlohmann::ordered_json grid_json(const StudyGrid& grid) {
  nlohmann::ordered_json j;
  j["version"] = std::string(kVersion);
  j["seed"] = grid.base_seed;
  j["replications"] = grid.replications;
  j["N"] = grid.observations;
  j["S"] = grid.points;
  j["cuts"] = to_string(grid.cuts);
  const SimulationConfig defaults;
  j["p"] = defaults.features;
  j["M"] = defaults.components;
  return j;
}

}  // namespace

std::string provenance_line(const std::string& command, const StudyGrid& grid,
                            const std::string& extra) {
  const SimulationConfig defaults;
  std::string line = "# mfpca " + std::string(kVersion) + " command=" + command +
                     " seed=" + std::to_string(grid.base_seed) +
                     " reps=" + std::to_string(grid.replications) +
                     " N=" + list_text(grid.observations) + " S=" + list_text(grid.points) +
                     " p=" + std::to_string(defaults.features) +
                     " M=" + std::to_string(defaults.components) +
                     " cuts=" + to_string(grid.cuts);
  if (!extra.empty()) line += " " + extra;
  return line + "\n";
}

namespace {

std::string error_provenance(const ErrorStudyReport& report) {
  return provenance_line("simulate-errors", report.config.grid,
                         "mj=" + list_text(report.config.truncations) +
                             " components=" + std::to_string(report.config.error_components));
}

std::string npc_provenance(const NpcStudyReport& report) {
  return provenance_line("simulate-npc", report.config.grid,
                         "alpha=" + list_text(report.config.alphas));
}

}  // namespace

std::string error_summary_csv(const ErrorStudyReport& report) {
  std::string out = error_provenance(report);
  out += "N,S,M_j,m,min,q1,median,q3,max\n";
  for (const auto& s : report.summaries) {
    for (std::size_t m = 0; m < s.per_component.size(); ++m) {
      const BoxStats& b = s.per_component[m];
      out += std::to_string(s.cell.observations) + "," + std::to_string(s.cell.points) + "," +
             std::to_string(s.truncation) + "," + std::to_string(m + 1) + "," +
             format_double(b.min) + "," + format_double(b.q1) + "," + format_double(b.median) +
             "," + format_double(b.q3) + "," + format_double(b.max) + "\n";
    }
  }
  return out;
}

std::string error_boxplot_csv(const ErrorStudyReport& report) {
  std::string out = error_provenance(report);
  out += "N,S,M_j,m,quantile,value\n";
  for (const auto& s : report.summaries) {
    for (std::size_t m = 0; m < s.per_component.size(); ++m) {
      const BoxStats& b = s.per_component[m];
      const std::string prefix = std::to_string(s.cell.observations) + "," +
                                 std::to_string(s.cell.points) + "," +
                                 std::to_string(s.truncation) + "," + std::to_string(m + 1) + ",";
      const std::pair<const char*, double> stats[] = {
          {"min", b.min}, {"q1", b.q1}, {"median", b.median}, {"q3", b.q3}, {"max", b.max}};
      for (const auto& [name, value] : stats) {
        out += prefix + name + "," + format_double(value) + "\n";
      }
    }
  }
  return out;
}

std::string error_json(const ErrorStudyReport& report) {
  nlohmann::ordered_json root;
  root["parameters"] = grid_json(report.config.grid);
  root["parameters"]["M_j"] = report.config.truncations;
  root["parameters"]["components"] = report.config.error_components;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  for (const auto& s : report.summaries) {
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (std::size_t m = 0; m < s.per_component.size(); ++m) {
      const BoxStats& b = s.per_component[m];
      comps.push_back({{"m", m + 1},
                       {"min", b.min},
                       {"q1", b.q1},
                       {"median", b.median},
                       {"q3", b.q3},
                       {"max", b.max}});
    }
    results[std::to_string(s.cell.observations)][std::to_string(s.cell.points)]
           [std::to_string(s.truncation)] = std::move(comps);
  }
  root["results"] = std::move(results);
  root["nesting"] = "results[N][S][M_j] -> per-component error quantiles";
  return root.dump(2) + "\n";
}

std::string error_replications_csv(const ErrorStudyReport& report) {
  std::string out = error_provenance(report);
  out += "N,S,replication,M_j,m,estimate,error,cuts,signs,cut_redraws\n";
  for (const auto& r : report.replications) {
    for (const auto& [mj, err] : r.errors) {
      const Vector& est = r.estimates.at(mj);
      for (Eigen::Index m = 0; m < err.size(); ++m) {
        out += std::to_string(r.cell.observations) + "," + std::to_string(r.cell.points) + "," +
               std::to_string(r.replication) + "," + std::to_string(mj) + "," +
               std::to_string(m + 1) + "," + format_double(est[m]) + "," + format_double(err[m]) +
               "," + list_text(r.cuts) + "," + signs_text(r.signs) + "," +
               std::to_string(r.cut_redraws) + "\n";
      }
    }
  }
  return out;
}

std::string npc_counts_csv(const NpcStudyReport& report) {
  std::string out = npc_provenance(report);
  out += "N,S,alpha,true_npc,npc_hat,count\n";
  for (const auto& s : report.summaries) {
    for (const auto& [value, count] : s.counts) {
      out += std::to_string(s.cell.observations) + "," + std::to_string(s.cell.points) + "," +
             format_double(s.alpha) + "," + std::to_string(s.true_npc) + "," +
             std::to_string(value) + "," + std::to_string(count) + "\n";
    }
  }
  return out;
}

std::string npc_json(const NpcStudyReport& report) {
  nlohmann::ordered_json root;
  root["parameters"] = grid_json(report.config.grid);
  root["parameters"]["alpha"] = report.config.alphas;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  for (const auto& s : report.summaries) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [value, count] : s.counts) counts[std::to_string(value)] = count;
    results[std::to_string(s.cell.observations)][std::to_string(s.cell.points)]
           [format_double(s.alpha)] = {{"true_npc", s.true_npc},
                                       {"mode", s.mode()},
                                       {"counts", std::move(counts)}};
  }
  root["results"] = std::move(results);
  root["nesting"] = "results[N][S][alpha] -> NPC_hat selection counts";
  return root.dump(2) + "\n";
}

std::string npc_replications_csv(const NpcStudyReport& report) {
  std::string out = npc_provenance(report);
  out += "N,S,replication,alpha,M_j,npc_hat,univariate_cap,cuts,signs,cut_redraws\n";
  for (const auto& r : report.replications) {
    for (const auto& [alpha, value] : r.npc) {
      out += std::to_string(r.cell.observations) + "," + std::to_string(r.cell.points) + "," +
             std::to_string(r.replication) + "," + format_double(alpha) + "," +
             list_text(r.chosen_truncations.at(alpha)) + "," + std::to_string(value) + "," +
             std::to_string(r.univariate_cap) + "," + list_text(r.cuts) + "," +
             signs_text(r.signs) + "," + std::to_string(r.cut_redraws) + "\n";
    }
  }
  return out;
}

}  // namespace mfpca::sim
