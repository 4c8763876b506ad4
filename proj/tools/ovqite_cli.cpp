// Command-line front end: run, scaling, sweep.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ovqite/config.hpp"
#include "ovqite/errors.hpp"
#include "ovqite/experiment.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCapability = 3;
constexpr int kExitSolver = 4;

ovqite::ExperimentConfig load(const std::string& path, std::optional<std::uint64_t> seed) {
  ovqite::ExperimentConfig cfg = ovqite::load_config(path);
  if (auto env = ovqite::seed_from_environment()) cfg.evolution.seed = *env;
  if (seed) cfg.evolution.seed = *seed;
  return cfg;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed,
            const std::string& output, std::size_t threads) {
  ovqite::ExperimentConfig cfg = load(path, seed);
  if (!output.empty()) cfg.output_path = output;
  if (threads > 0) cfg.threads = threads;
  const ovqite::Trajectory traj = ovqite::run_experiment(cfg);
  ovqite::write_run_outputs(traj, cfg);
  const auto& last = traj.last();
  std::printf("steps=%zu final_rel_error=%.6e total_measurements=%llu output=%s\n",
              traj.records.size(), last.rel_error,
              static_cast<unsigned long long>(last.cumulative.measurements()),
              cfg.output_path.c_str());
  if (traj.aborted) {
    std::fprintf(stderr, "solver failure: %s\n", traj.aborted->c_str());
    return kExitSolver;
  }
  return 0;
}

void emit(const std::string& output, const auto& writer) {
  if (output.empty() || output == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream f(output);
  if (!f) throw ovqite::ConfigError("cannot write " + output);
  writer(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational imaginary-time evolution simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::size_t threads = 0;

  auto* run = app.add_subcommand("run", "Evolve one configuration and write its outputs");
  run->add_option("config", config_path, "Configuration file")->required();
  run->add_option("--seed", seed, "Master seed (overrides the file and OVQITE_SEED)");
  run->add_option("--output", output, "Output directory (overrides output.path)");
  run->add_option("--threads", threads, "Worker threads");

  ovqite::ScalingOptions scaling_opt;
  bool open_chain = false;
  std::string scaling_output;
  auto* scaling = app.add_subcommand("scaling", "Per-step circuit and measurement counts versus n");
  scaling->add_option("--n-min", scaling_opt.n_min, "Smallest chain")->capture_default_str();
  scaling->add_option("--n-max", scaling_opt.n_max, "Largest chain")->capture_default_str();
  scaling->add_option("--layers", scaling_opt.layers, "Ansatz layers")->capture_default_str();
  scaling->add_option("--shots", scaling_opt.shots, "Shots per circuit")->capture_default_str();
  scaling->add_option("--sets", scaling_opt.operator_sets, "Operator sets")->delimiter(',')
      ->capture_default_str();
  scaling->add_flag("--open", open_chain, "Open boundary conditions");
  scaling->add_option("--output", scaling_output, "CSV file (default stdout)");

  std::string sweep_config;
  std::vector<std::string> variants{"vqite", "ovqite:S_H", "ovqite:S_IM"};
  ovqite::SweepOptions sweep_opt;
  std::string sweep_output;
  std::size_t sweep_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Measurements needed to reach a target accuracy");
  sweep->add_option("config", sweep_config, "Base configuration file")->required();
  sweep->add_option("--variants", variants, "vqite and/or ovqite:<set>")->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--shots", sweep_opt.shots, "Shot counts")->delimiter(',')->required();
  sweep->add_option("--seeds", sweep_opt.seeds, "Seeds (default: the config seed)")
      ->delimiter(',');
  sweep->add_option("--target", sweep_opt.target, "Relative energy error target")
      ->capture_default_str();
  sweep->add_option("--threads", sweep_threads, "Worker threads");
  sweep->add_option("--output", sweep_output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*run) return cmd_run(config_path, seed, output, threads);
    if (*scaling) {
      scaling_opt.periodic = !open_chain;
      const auto rows = ovqite::scaling_table(scaling_opt);
      emit(scaling_output, [&](std::ostream& o) { ovqite::write_scaling_csv(o, rows); });
      return 0;
    }
    if (*sweep) {
      ovqite::ExperimentConfig base = load(sweep_config, std::nullopt);
      if (sweep_threads > 0) base.threads = sweep_threads;
      for (const auto& v : variants) sweep_opt.variants.push_back(ovqite::parse_variant(v));
      if (sweep_opt.seeds.empty()) sweep_opt.seeds.push_back(base.evolution.seed);
      for (auto s : sweep_opt.shots)
        if (s == 0) throw ovqite::ConfigError("--shots entries must be positive");
      const auto rows = ovqite::sweep(base, sweep_opt);
      emit(sweep_output,
           [&](std::ostream& o) { ovqite::write_sweep_csv(o, rows, sweep_opt.target, base); });
      return 0;
    }
  } catch (const ovqite::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitParse;
  } catch (const ovqite::CapabilityError& e) {
    std::fprintf(stderr, "capability error: %s\n", e.what());
    return kExitCapability;
  } catch (const ovqite::SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
