// extern "C" surface over the C++ core. Handles own C++ objects; every entry
// point translates exceptions into mfpca_status codes.

#include "mfpca/mfpca.h"

#include "mfpca/basis.hpp"
#include "mfpca/csv.hpp"
#include "mfpca/error.hpp"
#include "mfpca/format.hpp"
#include "mfpca/mfpca.hpp"
#include "mfpca/sim.hpp"
#include "mfpca/weather.hpp"

#include <filesystem>
#include <new>
#include <string>
#include <thread>
#include <vector>

struct mfpca_sample {
  std::vector<mfpca::UnivariateFunctionalSample> features;
  std::vector<std::string> observation_names;
};

struct mfpca_model {
  mfpca::MfpcaFit fit;
  std::vector<std::string> observation_names;
};

struct mfpca_error_study {
  mfpca::sim::ErrorStudyReport report;
};

struct mfpca_npc_study {
  mfpca::sim::NpcStudyReport report;
};

struct mfpca_weather {
  mfpca::weather::WeatherDataset data;
};

struct mfpca_scenario {
  mfpca::weather::ScenarioResult result;
};

namespace {

thread_local std::string g_last_error;

mfpca_status to_status(mfpca::ErrorCode code) {
  using mfpca::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidGrid: return MFPCA_ERR_INVALID_GRID;
    case ErrorCode::InvalidMatrix: return MFPCA_ERR_INVALID_MATRIX;
    case ErrorCode::Dimension: return MFPCA_ERR_DIMENSION;
    case ErrorCode::DegenerateFunction: return MFPCA_ERR_DEGENERATE_FUNCTION;
    case ErrorCode::InsufficientData: return MFPCA_ERR_INSUFFICIENT_DATA;
    case ErrorCode::Truncation: return MFPCA_ERR_TRUNCATION;
    case ErrorCode::DegenerateSpectrum: return MFPCA_ERR_DEGENERATE_SPECTRUM;
    case ErrorCode::Config: return MFPCA_ERR_CONFIG;
    case ErrorCode::Spec: return MFPCA_ERR_SPEC;
    case ErrorCode::SingularFit: return MFPCA_ERR_SINGULAR_FIT;
    case ErrorCode::Schema: return MFPCA_ERR_SCHEMA;
    case ErrorCode::Validation: return MFPCA_ERR_VALIDATION;
    case ErrorCode::Io: return MFPCA_ERR_IO;
  }
  return MFPCA_ERR_INTERNAL;
}

mfpca_status fail(mfpca_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

struct ArgumentError {
  std::string message;
};

template <class F>
mfpca_status guarded(F&& body) {
  try {
    body();
    return MFPCA_OK;
  } catch (const ArgumentError& e) {
    return fail(MFPCA_ERR_INVALID_ARGUMENT, e.message);
  } catch (const mfpca::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MFPCA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MFPCA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MFPCA_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ArgumentError{what};
}

void copy_out(const mfpca::Vector& v, double* out, std::size_t capacity) {
  require(out != nullptr, "output buffer is NULL");
  if (capacity < static_cast<std::size_t>(v.size())) {
    throw mfpca::Error(mfpca::ErrorCode::Dimension,
                       "output buffer holds " + std::to_string(capacity) + " values, " +
                           std::to_string(v.size()) + " needed");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i];
}

// Buffer-size failures get their own status rather than a dimension error.
template <class F>
mfpca_status guarded_copy(F&& body) {
  const mfpca_status st = guarded(body);
  if (st == MFPCA_ERR_DIMENSION && g_last_error.rfind("output buffer", 0) == 0) {
    return MFPCA_ERR_BUFFER;
  }
  return st;
}

std::vector<double> alphas_of(const double* alphas, std::size_t count) {
  require(count == 0 || alphas != nullptr, "alphas is NULL");
  return std::vector<double>(alphas, alphas + count);
}

void write_variance(const mfpca::VarianceReport& rep, double* pve, double* cumulative,
                    std::size_t* npc) {
  const auto n = static_cast<std::size_t>(rep.pve.size());
  if (pve != nullptr) copy_out(rep.pve, pve, n);
  if (cumulative != nullptr) copy_out(rep.cumulative, cumulative, n);
  if (!rep.npc.empty()) {
    require(npc != nullptr, "npc output is NULL");
    for (std::size_t i = 0; i < rep.npc.size(); ++i) npc[i] = rep.npc[i].second;
  }
}

mfpca::sim::StudyGrid study_grid(const mfpca_study_grid* g) {
  require(g != nullptr, "study grid is NULL");
  require(g->observations != nullptr && g->observation_count > 0, "no N values");
  require(g->points != nullptr && g->point_count > 0, "no S values");
  require(g->cuts == MFPCA_CUTS_EQUAL || g->cuts == MFPCA_CUTS_UNIFORM, "unknown cut policy");
  mfpca::sim::StudyGrid grid;
  grid.observations.assign(g->observations, g->observations + g->observation_count);
  grid.points.assign(g->points, g->points + g->point_count);
  grid.replications = g->replications;
  grid.base_seed = g->seed;
  grid.cuts = g->cuts == MFPCA_CUTS_EQUAL ? mfpca::sim::CutPolicy::Equal
                                          : mfpca::sim::CutPolicy::Uniform;
  grid.threads = g->threads != 0 ? g->threads
                                 : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return grid;
}

std::string in_dir(const char* dir, const char* name) {
  require(dir != nullptr, "directory is NULL");
  return (std::filesystem::path(dir) / name).string();
}

std::string provenance_of(const char* text) {
  std::string line = text != nullptr ? std::string(text)
                                     : "# mfpca " + std::string(mfpca::kVersion);
  if (line.empty() || line.front() != '#') line = "# " + line;
  if (line.back() != '\n') line += '\n';
  return line;
}

}  // namespace

extern "C" {

const char* mfpca_version(void) { return mfpca::kVersion.data(); }

const char* mfpca_status_name(mfpca_status status) {
  switch (status) {
    case MFPCA_OK: return "ok";
    case MFPCA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MFPCA_ERR_INVALID_GRID: return "invalid grid";
    case MFPCA_ERR_INVALID_MATRIX: return "invalid matrix";
    case MFPCA_ERR_DIMENSION: return "dimension mismatch";
    case MFPCA_ERR_DEGENERATE_FUNCTION: return "degenerate function";
    case MFPCA_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case MFPCA_ERR_TRUNCATION: return "invalid truncation";
    case MFPCA_ERR_DEGENERATE_SPECTRUM: return "degenerate spectrum";
    case MFPCA_ERR_CONFIG: return "configuration error";
    case MFPCA_ERR_SPEC: return "invalid split specification";
    case MFPCA_ERR_SINGULAR_FIT: return "singular fit";
    case MFPCA_ERR_SCHEMA: return "schema error";
    case MFPCA_ERR_VALIDATION: return "validation error";
    case MFPCA_ERR_IO: return "I/O error";
    case MFPCA_ERR_INTERNAL: return "internal error";
    case MFPCA_ERR_BUFFER: return "buffer too small";
  }
  return "unknown status";
}

const char* mfpca_last_error(void) { return g_last_error.c_str(); }

mfpca_status mfpca_variance_report(const double* eigenvalues, size_t count, const double* alphas,
                                   size_t alpha_count, double* pve, double* cumulative,
                                   size_t* npc) {
  return guarded_copy([&] {
    require(eigenvalues != nullptr && count > 0, "eigenvalues empty or NULL");
    const mfpca::Vector nu = Eigen::Map<const mfpca::Vector>(eigenvalues, static_cast<Eigen::Index>(count));
    write_variance(mfpca::variance_report(nu, alphas_of(alphas, alpha_count)), pve, cumulative, npc);
  });
}

mfpca_status mfpca_select_by_pve(const double* eigenvalues, size_t count, double alpha,
                                 size_t* out) {
  return guarded([&] {
    require(eigenvalues != nullptr && count > 0 && out != nullptr, "NULL argument");
    const mfpca::Vector l = Eigen::Map<const mfpca::Vector>(eigenvalues, static_cast<Eigen::Index>(count));
    *out = mfpca::select_M_by_pve(l, alpha);
  });
}

// Samples ------------------------------------------------------------------

mfpca_status mfpca_sample_create(mfpca_sample** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new mfpca_sample();
  });
}

mfpca_status mfpca_sample_add_feature(mfpca_sample* sample, const double* grid, size_t points,
                                      const double* values, size_t observations) {
  return guarded([&] {
    require(sample != nullptr && grid != nullptr && values != nullptr, "NULL argument");
    if (!sample->features.empty() && sample->features.front().observations() != observations) {
      throw mfpca::Error(mfpca::ErrorCode::Dimension,
                         "feature has " + std::to_string(observations) + " observations, sample has " +
                             std::to_string(sample->features.front().observations()));
    }
    mfpca::SampledGrid g(std::vector<double>(grid, grid + points));
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    mfpca::Matrix v = Eigen::Map<const RowMajor>(values, static_cast<Eigen::Index>(observations),
                                                 static_cast<Eigen::Index>(points));
    sample->features.emplace_back(std::move(g), std::move(v), sample->features.size());
    if (sample->observation_names.empty()) {
      for (std::size_t i = 0; i < observations; ++i) {
        sample->observation_names.push_back(std::to_string(i + 1));
      }
    }
  });
}

mfpca_status mfpca_sample_load_csv(const char* const* paths, size_t count, mfpca_sample** out) {
  return guarded([&] {
    require(paths != nullptr && count > 0 && out != nullptr, "NULL or empty argument");
    auto sample = std::make_unique<mfpca_sample>();
    for (std::size_t j = 0; j < count; ++j) {
      require(paths[j] != nullptr, "NULL path");
      mfpca::FeatureTable t = mfpca::read_feature_csv(paths[j]);
      std::vector<double> grid;
      if (t.grid) {
        grid = *t.grid;
      } else {
        for (Eigen::Index s = 0; s < t.values.cols(); ++s) grid.push_back(static_cast<double>(s + 1));
      }
      if (j == 0) {
        sample->observation_names = t.observation_names;
      } else if (t.observation_names.size() != sample->observation_names.size()) {
        throw mfpca::Error(mfpca::ErrorCode::Schema,
                           std::string(paths[j]) + ": " + std::to_string(t.observation_names.size()) +
                               " observation columns, first file has " +
                               std::to_string(sample->observation_names.size()));
      }
      sample->features.emplace_back(mfpca::SampledGrid(std::move(grid)), std::move(t.values), j);
    }
    *out = sample.release();
  });
}

size_t mfpca_sample_features(const mfpca_sample* sample) {
  return sample != nullptr ? sample->features.size() : 0;
}

size_t mfpca_sample_observations(const mfpca_sample* sample) {
  return sample != nullptr && !sample->features.empty() ? sample->features.front().observations() : 0;
}

size_t mfpca_sample_points(const mfpca_sample* sample, size_t feature) {
  return sample != nullptr && feature < sample->features.size() ? sample->features[feature].points()
                                                                : 0;
}

void mfpca_sample_free(mfpca_sample* sample) { delete sample; }

// Fitting --------------------------------------------------------------------

mfpca_status mfpca_fit(const mfpca_sample* sample, const size_t* truncations, size_t count,
                       size_t smoothing_basis, mfpca_model** out) {
  return guarded([&] {
    require(sample != nullptr && truncations != nullptr && out != nullptr, "NULL argument");
    require(!sample->features.empty(), "sample has no features");
    std::vector<mfpca::UnivariateFunctionalSample> features = sample->features;
    if (smoothing_basis > 0) {
      for (auto& f : features) {
        f = mfpca::smooth_to_basis(f, mfpca::bspline_design(f.grid(), smoothing_basis, 3));
      }
    }
    mfpca::TruncationSpec spec(std::vector<std::size_t>(truncations, truncations + count));
    auto model = std::make_unique<mfpca_model>();
    model->fit = mfpca::fit_mfpca(mfpca::MultivariateFunctionalSample(std::move(features)), spec);
    model->observation_names = sample->observation_names;
    *out = model.release();
  });
}

size_t mfpca_model_components(const mfpca_model* model) {
  return model != nullptr ? model->fit.system.components() : 0;
}

size_t mfpca_model_reliable(const mfpca_model* model) {
  return model != nullptr ? model->fit.system.reliable_count : 0;
}

size_t mfpca_model_features(const mfpca_model* model) {
  return model != nullptr ? model->fit.univariate.size() : 0;
}

size_t mfpca_model_observations(const mfpca_model* model) {
  return model != nullptr ? static_cast<size_t>(model->fit.scores.values.rows()) : 0;
}

mfpca_status mfpca_model_eigenvalues(const mfpca_model* model, double* out, size_t capacity) {
  return guarded_copy([&] {
    require(model != nullptr, "model is NULL");
    copy_out(model->fit.system.eigenvalues, out, capacity);
  });
}

mfpca_status mfpca_model_eigenfunction(const mfpca_model* model, size_t component, size_t feature,
                                       double* out, size_t capacity) {
  return guarded_copy([&] {
    require(model != nullptr, "model is NULL");
    const auto& sys = model->fit.system;
    require(component < sys.components(), "component index out of range");
    require(feature < sys.eigenfunctions.size(), "feature index out of range");
    copy_out(sys.eigenfunctions[feature].col(static_cast<Eigen::Index>(component)), out, capacity);
  });
}

mfpca_status mfpca_model_scores(const mfpca_model* model, double* out, size_t capacity) {
  return guarded_copy([&] {
    require(model != nullptr, "model is NULL");
    const mfpca::Matrix& rho = model->fit.multivariate_scores;
    mfpca::Vector flat(rho.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      for (Eigen::Index m = 0; m < rho.cols(); ++m) flat[k++] = rho(i, m);
    }
    copy_out(flat, out, capacity);
  });
}

mfpca_status mfpca_model_univariate_eigenvalues(const mfpca_model* model, size_t feature,
                                                double* out, size_t capacity, size_t* written) {
  return guarded_copy([&] {
    require(model != nullptr && written != nullptr, "NULL argument");
    require(feature < model->fit.univariate.size(), "feature index out of range");
    const auto& lambda = model->fit.univariate[feature].eigenvalues;
    copy_out(lambda, out, capacity);
    *written = static_cast<size_t>(lambda.size());
  });
}

mfpca_status mfpca_model_variance(const mfpca_model* model, int reliable_only,
                                  const double* alphas, size_t alpha_count, double* pve,
                                  double* cumulative, size_t* npc) {
  return guarded_copy([&] {
    require(model != nullptr, "model is NULL");
    const auto& sys = model->fit.system;
    const mfpca::Vector nu =
        reliable_only ? mfpca::Vector(sys.eigenvalues.head(static_cast<Eigen::Index>(sys.reliable_count)))
                      : sys.eigenvalues;
    write_variance(mfpca::variance_report(nu, alphas_of(alphas, alpha_count)), pve, cumulative, npc);
  });
}

mfpca_status mfpca_model_write_reports(const mfpca_model* model, const char* dir,
                                       const char* provenance, const double* alphas,
                                       size_t alpha_count, int all_components) {
  return guarded([&] {
    require(model != nullptr, "model is NULL");
    const std::string head = provenance_of(provenance);
    const auto& fit = model->fit;
    const auto& sys = fit.system;
    const std::size_t k = all_components ? sys.components() : sys.reliable_count;
    auto flag = [&](std::size_t m) { return sys.reliable(m) ? "false" : "true"; };

    const mfpca::VarianceReport all = mfpca::variance_report(sys.eigenvalues, alphas_of(alphas, alpha_count));
    const mfpca::VarianceReport rel = mfpca::variance_report(
        sys.eigenvalues.head(static_cast<Eigen::Index>(sys.reliable_count)), alphas_of(alphas, alpha_count));

    std::string eig = head + "rank,eigenvalue,pve,cumulative_pve,pve_reliable,unreliable\n";
    for (std::size_t m = 0; m < k; ++m) {
      const auto i = static_cast<Eigen::Index>(m);
      eig += std::to_string(m + 1) + "," + mfpca::format_double(sys.eigenvalues[i]) + "," +
             mfpca::format_double(all.pve[i]) + "," + mfpca::format_double(all.cumulative[i]) + "," +
             (sys.reliable(m) ? mfpca::format_double(rel.pve[i]) : std::string()) + "," + flag(m) +
             "\n";
    }
    mfpca::write_text_file(in_dir(dir, "eigenvalues.csv"), eig);

    std::string var = head + "alpha,npc,npc_reliable,components,reliable_components\n";
    for (std::size_t a = 0; a < all.npc.size(); ++a) {
      var += mfpca::format_double(all.npc[a].first) + "," + std::to_string(all.npc[a].second) + "," +
             std::to_string(rel.npc[a].second) + "," + std::to_string(k) + "," +
             std::to_string(sys.reliable_count) + "\n";
    }
    mfpca::write_text_file(in_dir(dir, "variance.csv"), var);

    std::string ef = head + "component,feature,index,t,value,unreliable\n";
    for (std::size_t m = 0; m < k; ++m) {
      for (std::size_t j = 0; j < sys.eigenfunctions.size(); ++j) {
        const auto& grid = fit.univariate[j].grid;
        const auto& block = sys.eigenfunctions[j];
        for (Eigen::Index s = 0; s < block.rows(); ++s) {
          ef += std::to_string(m + 1) + "," + std::to_string(j + 1) + "," + std::to_string(s + 1) +
                "," + mfpca::format_double(grid[static_cast<std::size_t>(s)]) + "," +
                mfpca::format_double(block(s, static_cast<Eigen::Index>(m))) + "," + flag(m) + "\n";
        }
      }
    }
    mfpca::write_text_file(in_dir(dir, "eigenfunctions.csv"), ef);

    std::string sc = head + "observation,component,score,unreliable\n";
    const auto& rho = fit.multivariate_scores;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      for (std::size_t m = 0; m < k; ++m) {
        sc += mfpca::csv_field(model->observation_names[static_cast<std::size_t>(i)]) + "," +
              std::to_string(m + 1) + "," +
              mfpca::format_double(rho(i, static_cast<Eigen::Index>(m))) + "," + flag(m) + "\n";
      }
    }
    mfpca::write_text_file(in_dir(dir, "scores.csv"), sc);
  });
}

void mfpca_model_free(mfpca_model* model) { delete model; }

// Studies ------------------------------------------------------------------

mfpca_status mfpca_error_study_run(const mfpca_study_grid* grid, const size_t* truncations,
                                   size_t truncation_count, size_t components,
                                   mfpca_error_study** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(truncations != nullptr && truncation_count > 0, "no truncation levels");
    mfpca::sim::ErrorStudyConfig cfg;
    cfg.grid = study_grid(grid);
    cfg.truncations.assign(truncations, truncations + truncation_count);
    cfg.error_components = components;
    auto study = std::make_unique<mfpca_error_study>();
    study->report = mfpca::sim::run_error_study(cfg);
    *out = study.release();
  });
}

mfpca_status mfpca_error_study_box(const mfpca_error_study* study, size_t n, size_t s,
                                   size_t truncation, size_t m, double out[5]) {
  return guarded([&] {
    require(study != nullptr && out != nullptr, "NULL argument");
    const auto& summary = study->report.summary({n, s}, truncation);
    require(m >= 1 && m <= summary.per_component.size(), "component index out of range");
    const auto& b = summary.per_component[m - 1];
    out[0] = b.min;
    out[1] = b.q1;
    out[2] = b.median;
    out[3] = b.q3;
    out[4] = b.max;
  });
}

mfpca_status mfpca_error_study_write(const mfpca_error_study* study, const char* dir) {
  return guarded([&] {
    require(study != nullptr, "study is NULL");
    const auto& r = study->report;
    mfpca::write_text_file(in_dir(dir, "error_summary.csv"), mfpca::sim::error_summary_csv(r));
    mfpca::write_text_file(in_dir(dir, "error_boxplot.csv"), mfpca::sim::error_boxplot_csv(r));
    mfpca::write_text_file(in_dir(dir, "error_report.json"), mfpca::sim::error_json(r));
    mfpca::write_text_file(in_dir(dir, "error_replications.csv"),
                           mfpca::sim::error_replications_csv(r));
  });
}

void mfpca_error_study_free(mfpca_error_study* study) { delete study; }

mfpca_status mfpca_npc_study_run(const mfpca_study_grid* grid, const double* alphas,
                                 size_t alpha_count, mfpca_npc_study** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    mfpca::sim::NpcStudyConfig cfg;
    cfg.grid = study_grid(grid);
    cfg.alphas = alphas_of(alphas, alpha_count);
    auto study = std::make_unique<mfpca_npc_study>();
    study->report = mfpca::sim::run_npc_study(cfg);
    *out = study.release();
  });
}

mfpca_status mfpca_npc_study_count(const mfpca_npc_study* study, size_t n, size_t s, double alpha,
                                   size_t npc, size_t* out) {
  return guarded([&] {
    require(study != nullptr && out != nullptr, "NULL argument");
    const auto& counts = study->report.summary({n, s}, alpha).counts;
    const auto it = counts.find(npc);
    *out = it == counts.end() ? 0 : it->second;
  });
}

mfpca_status mfpca_npc_study_mode(const mfpca_npc_study* study, size_t n, size_t s, double alpha,
                                  size_t* mode, size_t* true_npc) {
  return guarded([&] {
    require(study != nullptr && mode != nullptr, "NULL argument");
    const auto& summary = study->report.summary({n, s}, alpha);
    *mode = summary.mode();
    if (true_npc != nullptr) *true_npc = summary.true_npc;
  });
}

mfpca_status mfpca_npc_study_write(const mfpca_npc_study* study, const char* dir) {
  return guarded([&] {
    require(study != nullptr, "study is NULL");
    const auto& r = study->report;
    mfpca::write_text_file(in_dir(dir, "npc_counts.csv"), mfpca::sim::npc_counts_csv(r));
    mfpca::write_text_file(in_dir(dir, "npc_report.json"), mfpca::sim::npc_json(r));
    mfpca::write_text_file(in_dir(dir, "npc_replications.csv"), mfpca::sim::npc_replications_csv(r));
  });
}

void mfpca_npc_study_free(mfpca_npc_study* study) { delete study; }

// Weather --------------------------------------------------------------------

mfpca_status mfpca_weather_load(const char* temperature_csv, const char* precipitation_csv,
                                const char* stations_csv, mfpca_weather** out) {
  return guarded([&] {
    require(temperature_csv != nullptr && precipitation_csv != nullptr && stations_csv != nullptr &&
                out != nullptr,
            "NULL argument");
    *out = new mfpca_weather{
        mfpca::weather::load_weather(temperature_csv, precipitation_csv, stations_csv)};
  });
}

mfpca_status mfpca_weather_load_dir(const char* dir, mfpca_weather** out) {
  return guarded([&] {
    require(dir != nullptr && out != nullptr, "NULL argument");
    *out = new mfpca_weather{mfpca::weather::load_weather_dir(dir)};
  });
}

size_t mfpca_weather_stations(const mfpca_weather* data) {
  return data != nullptr ? data->data.stations.size() : 0;
}

void mfpca_weather_free(mfpca_weather* data) { delete data; }

mfpca_status mfpca_weather_run_scenario(const mfpca_weather* data, size_t m1, size_t m2, int id,
                                        mfpca_scenario** out) {
  return guarded([&] {
    require(data != nullptr && out != nullptr, "NULL argument");
    *out = new mfpca_scenario{mfpca::weather::run_scenario(data->data, m1, m2, id)};
  });
}

size_t mfpca_scenario_components(const mfpca_scenario* scenario) {
  return scenario != nullptr ? scenario->result.components() : 0;
}

int mfpca_scenario_fewer_than_four(const mfpca_scenario* scenario) {
  return scenario != nullptr && scenario->result.fewer_than_four ? 1 : 0;
}

mfpca_status mfpca_scenario_eigenvalues(const mfpca_scenario* scenario, double* out,
                                        size_t capacity) {
  return guarded_copy([&] {
    require(scenario != nullptr, "scenario is NULL");
    copy_out(scenario->result.eigenvalues, out, capacity);
  });
}

mfpca_status mfpca_scenario_eigenfunction(const mfpca_scenario* scenario, size_t component,
                                          size_t feature, double* out, size_t capacity) {
  return guarded_copy([&] {
    require(scenario != nullptr, "scenario is NULL");
    const auto& r = scenario->result;
    require(component < r.components(), "component index out of range");
    require(feature < r.eigenfunctions.size(), "feature index out of range");
    copy_out(r.eigenfunctions[feature].col(static_cast<Eigen::Index>(component)), out, capacity);
  });
}

mfpca_status mfpca_scenario_align(const mfpca_scenario* reference, mfpca_scenario* other) {
  return guarded([&] {
    require(reference != nullptr && other != nullptr, "NULL argument");
    other->result = mfpca::weather::align_signs(reference->result, std::move(other->result));
  });
}

mfpca_status mfpca_weather_write_reports(const mfpca_scenario* const* scenarios, size_t count,
                                         const char* dir, const char* provenance) {
  return guarded([&] {
    require(scenarios != nullptr && count > 0, "no scenarios");
    std::vector<mfpca::weather::ScenarioResult> results;
    for (std::size_t i = 0; i < count; ++i) {
      require(scenarios[i] != nullptr, "NULL scenario");
      results.push_back(scenarios[i]->result);
    }
    const std::string head = provenance_of(provenance);
    mfpca::write_text_file(in_dir(dir, "table2.csv"), mfpca::weather::table2_csv(results, head));
    mfpca::weather::export_eigenfunctions(results, in_dir(dir, "eigenfunctions.csv"), head);
  });
}

void mfpca_scenario_free(mfpca_scenario* scenario) { delete scenario; }

}  // extern "C"
