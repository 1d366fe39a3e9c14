// Command-line front end. Talks to the library only through the C API.

#include "cli_config.hpp"

#include "mfpca/mfpca.h"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#ifndef MFPCA_DATA_DIR
#define MFPCA_DATA_DIR "data/weather"
#endif

namespace {

using mfpca::cli::RunConfig;

struct Failure {
  mfpca_status status;
  std::string message;
};

void check(mfpca_status st) {
  if (st != MFPCA_OK) throw Failure{st, mfpca_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

std::string list(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (auto x : v) {
    std::ostringstream o;
    o << x;
    s += (s.empty() ? "" : ",") + o.str();
  }
  return s;
}

void make_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure{MFPCA_ERR_IO, "cannot create output directory '" + dir + "': " + ec.message()};
}

mfpca_study_grid study_grid(const RunConfig& cfg) {
  mfpca_study_grid g{};
  g.observations = cfg.n.data();
  g.observation_count = cfg.n.size();
  g.points = cfg.s.data();
  g.point_count = cfg.s.size();
  g.replications = cfg.reps;
  g.seed = cfg.seed;
  g.cuts = cfg.cuts == "uniform" ? MFPCA_CUTS_UNIFORM : MFPCA_CUTS_EQUAL;
  g.threads = cfg.threads;
  return g;
}

void simulate_errors(const RunConfig& cfg) {
  make_out_dir(cfg.out);
  const mfpca_study_grid g = study_grid(cfg);
  mfpca_error_study* raw = nullptr;
  check(mfpca_error_study_run(&g, cfg.mj.data(), cfg.mj.size(), cfg.components, &raw));
  Handle<mfpca_error_study, mfpca_error_study_free> study(raw);
  check(mfpca_error_study_write(study.get(), cfg.out.c_str()));

  std::printf("median Err(nu_m) by cell\n");
  for (auto n : cfg.n) {
    for (auto s : cfg.s) {
      for (auto mj : cfg.mj) {
        double box[5];
        std::printf("N=%zu S=%zu M_j=%zu:", n, s, mj);
        for (std::size_t m : {1u, 5u, 10u, 25u}) {
          if (m > cfg.components) continue;
          check(mfpca_error_study_box(study.get(), n, s, mj, m, box));
          std::printf("  m=%zu %.3g", m, box[2]);
        }
        std::printf("\n");
      }
    }
  }
  std::printf("wrote error_summary.csv, error_boxplot.csv, error_report.json, "
              "error_replications.csv to %s\n",
              cfg.out.c_str());
}

void simulate_npc(const RunConfig& cfg) {
  make_out_dir(cfg.out);
  const mfpca_study_grid g = study_grid(cfg);
  mfpca_npc_study* raw = nullptr;
  check(mfpca_npc_study_run(&g, cfg.alphas.data(), cfg.alphas.size(), &raw));
  Handle<mfpca_npc_study, mfpca_npc_study_free> study(raw);
  check(mfpca_npc_study_write(study.get(), cfg.out.c_str()));

  for (double a : cfg.alphas) {
    std::size_t mode = 0, truth = 0;
    std::printf("alpha=%g\n", a);
    for (auto n : cfg.n) {
      for (auto s : cfg.s) {
        check(mfpca_npc_study_mode(study.get(), n, s, a, &mode, &truth));
        std::size_t count = 0;
        check(mfpca_npc_study_count(study.get(), n, s, a, mode, &count));
        std::printf("  N=%zu S=%zu true=%zu modal=%zu (%zu/%zu)\n", n, s, truth, mode, count,
                    cfg.reps);
      }
    }
  }
  std::printf("wrote npc_counts.csv, npc_report.json, npc_replications.csv to %s\n",
              cfg.out.c_str());
}

void weather(const RunConfig& cfg) {
  make_out_dir(cfg.out);
  mfpca_weather* raw = nullptr;
  check(mfpca_weather_load_dir(cfg.data.c_str(), &raw));
  Handle<mfpca_weather, mfpca_weather_free> data(raw);

  const std::size_t scenarios[2][2] = {{2, 2}, {4, 4}};
  std::vector<Handle<mfpca_scenario, mfpca_scenario_free>> results;
  for (int i = 0; i < 2; ++i) {
    mfpca_scenario* s = nullptr;
    check(mfpca_weather_run_scenario(data.get(), scenarios[i][0], scenarios[i][1], i + 1, &s));
    results.emplace_back(s);
  }
  check(mfpca_scenario_align(results[0].get(), results[1].get()));

  std::printf("scenario  M_1 M_2  nu_1        nu_2        nu_3        nu_4\n");
  for (int i = 0; i < 2; ++i) {
    double nu[4] = {0, 0, 0, 0};
    check(mfpca_scenario_eigenvalues(results[i].get(), nu, 4));
    std::printf("%-9d %-3zu %-3zu  %-11.1f %-11.1f %-11.1f %-11.1f\n", i + 1, scenarios[i][0],
                scenarios[i][1], nu[0], nu[1], nu[2], nu[3]);
  }
  const std::string prov = "# mfpca " + std::string(mfpca_version()) +
                           " command=weather seed=none scenarios=2:2,4:4 basis=10 degree=3";
  const mfpca_scenario* ptrs[2] = {results[0].get(), results[1].get()};
  check(mfpca_weather_write_reports(ptrs, 2, cfg.out.c_str(), prov.c_str()));
  std::printf("wrote table2.csv, eigenfunctions.csv to %s\n", cfg.out.c_str());
}

void mfpca_run(const RunConfig& cfg) {
  make_out_dir(cfg.out);
  std::vector<const char*> paths;
  for (const auto& p : cfg.inputs) paths.push_back(p.c_str());
  mfpca_sample* raw = nullptr;
  check(mfpca_sample_load_csv(paths.data(), paths.size(), &raw));
  Handle<mfpca_sample, mfpca_sample_free> sample(raw);

  mfpca_model* mraw = nullptr;
  check(mfpca_fit(sample.get(), cfg.mj.data(), cfg.mj.size(), cfg.basis, &mraw));
  Handle<mfpca_model, mfpca_model_free> model(mraw);

  std::string inputs;
  for (const auto& p : cfg.inputs) inputs += (inputs.empty() ? "" : ",") + std::filesystem::path(p).filename().string();
  const std::string prov = "# mfpca " + std::string(mfpca_version()) +
                           " command=mfpca-run seed=none inputs=" + inputs + " mj=" + list(cfg.mj) +
                           " basis=" + std::to_string(cfg.basis) + " alpha=" + list(cfg.alphas) +
                           " all_components=" + (cfg.all_components ? "true" : "false");
  check(mfpca_model_write_reports(model.get(), cfg.out.c_str(), prov.c_str(), cfg.alphas.data(),
                                  cfg.alphas.size(), cfg.all_components ? 1 : 0));

  const std::size_t k = mfpca_model_components(model.get());
  const std::size_t reliable = mfpca_model_reliable(model.get());
  std::vector<double> nu(k);
  check(mfpca_model_eigenvalues(model.get(), nu.data(), nu.size()));
  std::printf("%zu features, %zu observations, %zu components (%zu reliable)\n",
              mfpca_model_features(model.get()), mfpca_model_observations(model.get()), k, reliable);
  const std::size_t shown = cfg.all_components ? k : reliable;
  for (std::size_t m = 0; m < shown; ++m) {
    std::printf("  nu_%zu = %.6g%s\n", m + 1, nu[m], m < reliable ? "" : "  (unreliable)");
  }
  std::printf("wrote eigenvalues.csv, variance.csv, eigenfunctions.csv, scores.csv to %s\n",
              cfg.out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  mfpca::cli::ParseResult parsed;
  try {
    parsed = mfpca::cli::parse_config(args, MFPCA_DATA_DIR);
  } catch (const mfpca::cli::UsageError& e) {
    if (args.empty()) {
      std::cout << e.what();
    } else {
      const char* prefix = e.kind() == mfpca::cli::UsageError::Kind::Io ? "I/O error: " : "error: ";
      std::cerr << prefix << e.what() << "\n";
    }
    return 2;
  }
  if (!parsed.config) {
    std::cout << parsed.help;
    return 0;
  }
  const RunConfig& cfg = *parsed.config;
  try {
    if (cfg.command == "simulate-errors") simulate_errors(cfg);
    else if (cfg.command == "simulate-npc") simulate_npc(cfg);
    else if (cfg.command == "weather") weather(cfg);
    else mfpca_run(cfg);
  } catch (const Failure& f) {
    std::cerr << "error (" << mfpca_status_name(f.status) << "): " << f.message << "\n";
    return 1;
  }
  return 0;
}
