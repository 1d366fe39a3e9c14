#pragma once

#include "mfpca/basis.hpp"
#include "mfpca/fdata.hpp"
#include "mfpca/numerics.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace mfpca::sim {

/// How the master interval [0, T] is cut into p feature domains.
enum class CutPolicy {
  Equal,    // T_j = (j - 1) T / p: the p unit domains placed end to end
  Uniform,  // sorted Uniform(0, T) draws with a minimum-spacing redraw guard
};

const char* to_string(CutPolicy policy) noexcept;
CutPolicy parse_cut_policy(const std::string& text);

struct SimulationConfig {
  std::size_t observations = 100;   // N
  std::size_t points = 100;         // S, same for every feature
  std::size_t features = 5;         // p
  std::size_t components = 50;      // M
  double total_length = 1.0;        // T
  CutPolicy cuts = CutPolicy::Equal;
  double min_cut_spacing = 0.02;    // fraction of T, Uniform policy only
  std::size_t master_oversampling = 20;
  std::uint64_t base_seed = 0;

  void validate() const;
};

/// nu_m = exp(-(m + 1) / 2), m = 1..count.
Vector true_eigenvalues(std::size_t count);

struct CutDraw {
  std::vector<double> cuts;
  std::size_t redraws = 0;
};

/// p - 1 sorted Uniform(0, T) points, redrawn while any gap (including the
/// gaps to 0 and T) is below min_spacing * T.
CutDraw draw_cuts(std::size_t features, double total_length, std::mt19937_64& rng,
                  double min_spacing = 0.02);

std::vector<double> equal_cuts(std::size_t features, double total_length);

struct SimulatedDataset {
  MultivariateFunctionalSample sample;
  MultivariateBasisSystem system;
  Vector eigenvalues;
  std::vector<double> cuts;
  std::vector<int> signs;
  std::size_t cut_redraws = 0;
};

SimulatedDataset simulate_dataset(const SimulationConfig& cfg, std::uint64_t replication);

/// Err_m = (nu_m - nu_hat_m)^2 / nu_m^2 for m = 1..count, matched by rank.
Vector eigenvalue_errors(const Vector& truth, const Vector& estimate, std::size_t count);

struct Cell {
  std::size_t observations;
  std::size_t points;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct StudyGrid {
  std::vector<std::size_t> observations{25, 50, 100};
  std::vector<std::size_t> points{25, 50, 100};
  std::size_t replications = 500;
  std::uint64_t base_seed = 0;
  CutPolicy cuts = CutPolicy::Equal;
  std::size_t threads = 1;

  std::vector<Cell> cells() const;
  SimulationConfig config_for(const Cell& cell) const;
};

struct ErrorStudyConfig {
  StudyGrid grid;
  std::vector<std::size_t> truncations{5, 10};  // M_j values, shared by all features
  std::size_t error_components = 25;
};

struct NpcStudyConfig {
  StudyGrid grid;
  std::vector<double> alphas{50, 70, 90, 95, 99};
};

struct ReplicationResult {
  std::size_t replication = 0;
  Cell cell{};
  std::vector<double> cuts;
  std::vector<int> signs;
  std::size_t cut_redraws = 0;
  std::size_t univariate_cap = 0;  // min(N - 1, S)
  // Error study: keyed by shared M_j.
  std::map<std::size_t, Vector> estimates;
  std::map<std::size_t, Vector> errors;
  // NPC study: keyed by alpha.
  std::map<double, std::vector<std::size_t>> chosen_truncations;
  std::map<double, std::size_t> npc;
};

struct BoxStats {
  double min, q1, median, q3, max;
};

/// Type-7 (linear interpolation) quantile of unsorted values.
double quantile(std::vector<double> values, double prob);
BoxStats box_stats(const std::vector<double>& values);

struct ErrorCellSummary {
  Cell cell;
  std::size_t truncation;
  std::vector<BoxStats> per_component;  // index m - 1
};

struct ErrorStudyReport {
  ErrorStudyConfig config;
  std::vector<ReplicationResult> replications;  // ordered by (cell, replication)
  std::vector<ErrorCellSummary> summaries;      // ordered by (cell, truncation)

  const ErrorCellSummary& summary(const Cell& cell, std::size_t truncation) const;
  /// Err values of component m (1-based) across replications.
  std::vector<double> errors(const Cell& cell, std::size_t truncation, std::size_t m) const;
};

struct NpcCellSummary {
  Cell cell;
  double alpha;
  std::size_t true_npc;
  std::map<std::size_t, std::size_t> counts;  // NPC_hat -> replications

  std::size_t mode() const;
};

struct NpcStudyReport {
  NpcStudyConfig config;
  std::vector<ReplicationResult> replications;
  std::vector<NpcCellSummary> summaries;  // ordered by (cell, alpha)

  const NpcCellSummary& summary(const Cell& cell, double alpha) const;
};

ErrorStudyReport run_error_study(const ErrorStudyConfig& cfg);
NpcStudyReport run_npc_study(const NpcStudyConfig& cfg);

/// Runs task(i) for i in [0, count) on `threads` workers. Each index runs
/// exactly once; the first exception is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task);

// Report serialisation. Every CSV starts with a '#' provenance line.
std::string provenance_line(const std::string& command, const StudyGrid& grid,
                            const std::string& extra);
std::string error_summary_csv(const ErrorStudyReport& report);
std::string error_boxplot_csv(const ErrorStudyReport& report);
std::string error_json(const ErrorStudyReport& report);
std::string error_replications_csv(const ErrorStudyReport& report);
std::string npc_counts_csv(const NpcStudyReport& report);
std::string npc_json(const NpcStudyReport& report);
std::string npc_replications_csv(const NpcStudyReport& report);

}  // namespace mfpca::sim
