#include "ovqite/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include <omp.h>

#include "json.hpp"
#include "ovqite/errors.hpp"
#include "ovqite/tfim.hpp"

namespace ovqite {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_provenance(std::ostream& out, const ExperimentConfig& cfg) {
  out << "# config_hash=" << config_hash(cfg) << " seed=" << cfg.evolution.seed << "\n";
}

}  // namespace

EvolutionProblem make_problem(const ExperimentConfig& cfg) {
  const PauliSum h = build_tfim(cfg.model);
  std::vector<PauliString> set;
  if (cfg.evolution.algorithm == Algorithm::ovqite) {
    set = operator_set(cfg.model, cfg.evolution.operator_set).members;
  }
  const double e0 = cfg.model.n <= kMaxDenseQubits ? exact_ground_energy(h)
                                                   : std::numeric_limits<double>::quiet_NaN();
  return EvolutionProblem{h, HeaAnsatz(cfg.model.n, cfg.layers), std::move(set), e0};
}

double resolve_rcond(const ExperimentConfig& cfg) {
  const auto& e = cfg.evolution;
  if (e.rcond) return *e.rcond;
  return default_rcond(e.algorithm, e.operator_set, e.shots > 0, cfg.model.h / cfg.model.J);
}

Trajectory run_experiment(const ExperimentConfig& cfg) {
  set_thread_count(cfg.threads);
  return run_evolution(make_problem(cfg), cfg.evolution, resolve_rcond(cfg));
}

void set_thread_count(std::size_t threads) {
  if (threads > 0) omp_set_num_threads(static_cast<int>(threads));
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const ExperimentConfig& cfg) {
  write_provenance(out, cfg);
  out << "step,tau,energy_exact,energy_estimated,rel_error,loss,sv_kept,circuits_step,"
         "shots_step,measurements_cumulative\n";
  for (const auto& r : traj.records) {
    out << r.step << ',' << num(r.tau) << ',' << num(r.energy_exact) << ','
        << num(r.energy_estimated) << ',' << num(r.rel_error) << ',' << num(r.loss) << ','
        << r.solve.kept << ',' << r.step_cost.circuits_total() << ','
        << r.step_cost.shots_total() << ',' << r.cumulative.measurements() << '\n';
  }
}

void write_ledger_csv(std::ostream& out, const Trajectory& traj, const ExperimentConfig& cfg) {
  write_provenance(out, cfg);
  out << "step,phase,circuits,shots,cumulative_measurements\n";
  auto emit = [&](const StepRecord& r) {
    std::uint64_t running = r.cumulative.measurements() - r.step_cost.measurements();
    for (std::size_t p = 0; p < kPhaseCount; ++p) {
      const auto phase = static_cast<Phase>(p);
      if (r.step_cost.circuits(phase) == 0) continue;
      running += r.step_cost.shots(phase);
      out << r.step << ',' << to_string(phase) << ',' << r.step_cost.circuits(phase) << ','
          << r.step_cost.shots(phase) << ',' << running << '\n';
    }
  };
  emit(traj.initial);
  for (const auto& r : traj.records) emit(r);
}

void write_summary_json(std::ostream& out, const Trajectory& traj, const ExperimentConfig& cfg) {
  const StepRecord& last = traj.last();
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.evolution.seed;
  j["algorithm"] = to_string(cfg.evolution.algorithm);
  j["operator_set"] = cfg.evolution.algorithm == Algorithm::ovqite ? cfg.evolution.operator_set : "-";
  j["shots"] = cfg.evolution.shots;
  j["rcond"] = traj.rcond;
  j["ground_energy"] = std::isnan(traj.ground_energy) ? nlohmann::ordered_json() : nlohmann::ordered_json(traj.ground_energy);
  j["steps_completed"] = traj.records.size();
  j["final_energy"] = last.energy_exact;
  j["final_rel_error"] = std::isnan(last.rel_error) ? nlohmann::ordered_json() : nlohmann::ordered_json(last.rel_error);
  j["total_circuits"] = last.cumulative.circuits_total();
  j["total_measurements"] = last.cumulative.measurements();
  std::size_t truncated = 0;
  for (const auto& r : traj.records) truncated += r.all_truncated ? 1 : 0;
  j["all_truncated_steps"] = truncated;
  j["aborted"] = traj.aborted ? nlohmann::ordered_json(*traj.aborted) : nlohmann::ordered_json();
  out << j.dump(2) << '\n';
}

void write_run_outputs(const Trajectory& traj, const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.output_path);
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw ConfigError("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("trajectory.csv");
    write_trajectory_csv(f, traj, cfg);
  }
  {
    auto f = open("ledger.csv");
    write_ledger_csv(f, traj, cfg);
  }
  {
    auto f = open("summary.json");
    write_summary_json(f, traj, cfg);
  }
}

std::optional<std::uint64_t> measurements_to_target(const Trajectory& traj, double target) {
  if (traj.initial.rel_error <= target) return traj.initial.cumulative.measurements();
  for (const auto& r : traj.records)
    if (r.rel_error <= target) return r.cumulative.measurements();
  return std::nullopt;
}

std::vector<PauliString> anticommutator_strings(const PauliSum& h,
                                                std::span<const PauliString> set) {
  std::vector<PauliString> out;
  std::unordered_set<PauliString, PauliStringHash> seen;
  for (const auto& o : set) {
    const PauliSum anti = anticommutator_with_sum(h, o);
    for (const auto& t : anti.terms())
      if (!t.string.is_identity() && seen.insert(t.string).second) out.push_back(t.string);
  }
  return out;
}

namespace {

std::uint64_t circuit_count(std::span<const PauliString> strings, MeasurementStrategy s) {
  return MeasurementPlan(std::vector<PauliString>(strings.begin(), strings.end()), s)
      .circuit_count();
}

std::vector<PauliString> strings_of(const PauliSum& h) {
  std::vector<PauliString> out;
  for (const auto& t : h.terms()) out.push_back(t.string);
  return out;
}

}  // namespace

std::vector<ScalingRow> scaling_table(const ScalingOptions& opt) {
  if (opt.n_min < 2 || opt.n_max < opt.n_min) throw ValidationError("invalid qubit range");
  std::vector<ScalingRow> rows;
  for (std::size_t n = opt.n_min; n <= opt.n_max; ++n) {
    const TfimParams model{n, 1.0, 0.5, opt.periodic};
    const PauliSum h = build_tfim(model);
    const auto h_strings = strings_of(h);
    const std::size_t np = HeaAnsatz(n, opt.layers).num_parameters();
    for (auto strategy : {MeasurementStrategy::naive, MeasurementStrategy::grouped}) {
      auto finish = [&](ScalingRow r) {
        r.measurements_per_step = opt.shots * r.per_step.total();
        r.measurements_per_qubit = static_cast<double>(r.measurements_per_step) / static_cast<double>(n);
        rows.push_back(std::move(r));
      };
      ScalingRow base;
      base.n = n;
      base.strategy = strategy;
      base.num_parameters = np;
      base.hamiltonian_circuits = circuit_count(h_strings, strategy);

      ScalingRow v = base;
      v.algorithm = Algorithm::vqite;
      v.operator_set = "-";
      v.per_step = count_circuits(Algorithm::vqite, h, {}, np, strategy);
      finish(v);

      for (const auto& name : opt.operator_sets) {
        const OperatorSet set = operator_set(model, name);
        ScalingRow o = base;
        o.algorithm = Algorithm::ovqite;
        o.operator_set = name;
        o.set_circuits = circuit_count(set.members, strategy);
        o.anticommutator_circuits = circuit_count(anticommutator_strings(h, set.members), strategy);
        o.per_step = count_circuits(Algorithm::ovqite, h, set.members, np, strategy);
        finish(o);
      }
    }
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
  out << "n,algorithm,operator_set,strategy,num_parameters,set_circuits,hamiltonian_circuits,"
         "anticommutator_circuits,circuits_M,circuits_v,circuits_G,circuits_b,circuits_energy,"
         "circuits_total,measurements_per_step,measurements_per_qubit\n";
  for (const auto& r : rows) {
    out << r.n << ',' << to_string(r.algorithm) << ',' << r.operator_set << ','
        << to_string(r.strategy) << ',' << r.num_parameters << ',' << r.set_circuits << ','
        << r.hamiltonian_circuits << ',' << r.anticommutator_circuits << ',' << r.per_step.M
        << ',' << r.per_step.v << ',' << r.per_step.G << ',' << r.per_step.b << ','
        << r.per_step.energy << ',' << r.per_step.total() << ',' << r.measurements_per_step
        << ',' << num(r.measurements_per_qubit) << '\n';
  }
}

std::string Variant::label() const {
  return algorithm == Algorithm::vqite ? "vqite" : "ovqite:" + operator_set;
}

Variant parse_variant(std::string_view text) {
  if (text == "vqite") return {Algorithm::vqite, "S_H"};
  if (text.starts_with("ovqite:") && text.size() > 7) {
    return {Algorithm::ovqite, std::string(text.substr(7))};
  }
  throw ConfigError("variant must be \"vqite\" or \"ovqite:<set>\", got \"" + std::string(text) + "\"");
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, const SweepOptions& opt) {
  std::vector<SweepRow> rows;
  for (const auto& variant : opt.variants) {
    for (std::uint64_t shots : opt.shots) {
      for (std::uint64_t seed : opt.seeds) {
        ExperimentConfig cfg = base;
        cfg.evolution.algorithm = variant.algorithm;
        cfg.evolution.operator_set = variant.operator_set;
        cfg.evolution.shots = shots;
        cfg.evolution.seed = seed;
        const Trajectory traj = run_experiment(cfg);
        SweepRow r;
        r.variant = variant;
        r.shots = shots;
        r.seed = seed;
        r.measurements = measurements_to_target(traj, opt.target);
        r.final_rel_error = traj.last().rel_error;
        r.total_measurements = traj.last().cumulative.measurements();
        rows.push_back(std::move(r));
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, double target,
                     const ExperimentConfig& base) {
  out << "# config_hash=" << config_hash(base) << " target=" << num(target) << "\n";
  out << "variant,shots,seed,measurements_to_target,final_rel_error,total_measurements\n";
  for (const auto& r : rows) {
    out << r.variant.label() << ',' << r.shots << ',' << r.seed << ','
        << (r.measurements ? std::to_string(*r.measurements) : std::string(kNotReached)) << ','
        << num(r.final_rel_error) << ',' << r.total_measurements << '\n';
  }
}

}  // namespace ovqite
