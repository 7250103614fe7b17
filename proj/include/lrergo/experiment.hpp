#pragma once

#include <map>

#include "lrergo/certify.hpp"
#include "lrergo/config_file.hpp"
#include "lrergo/model.hpp"
#include "lrergo/quadrature.hpp"
#include "lrergo/ray_average.hpp"
#include "lrergo/states.hpp"

namespace lrergo {

inline constexpr const char* kToolVersion = "0.1.0";

// A fully parsed run description: lattice, model, state, named observables,
// quadrature policy, ray, and the command plus its parameters (read from the
// [command] section on demand).
struct ExperimentConfig {
  Torus volume;
  ModelPreset preset;
  double lambda = 0.6931471805599453;
  Interaction phi;
  int site_dim = 2;

  std::string state_kind = "gibbs";  // gibbs | tracial | product
  double beta = 1.0;
  std::vector<Vector> product_vectors;

  std::map<std::string, LocalOperator> observables;
  QuadratureSpec quad;
  RaySpec ray;

  std::string command;
  ConfigFile raw;
};

ExperimentConfig parse_experiment(const ConfigFile& cf);

// Named observable lookup with a config-error diagnostic.
const LocalOperator& observable(const ExperimentConfig& ex, const std::string& name);

EvolutionEngine make_engine(const ExperimentConfig& ex);
State make_state(const ExperimentConfig& ex, const EvolutionEngine& eng);

struct RunOptions {
  std::string out_dir = ".";
  std::string format = "default";  // csv | json | default (per command)
  Exec exec = Exec::openmp;
};

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> outputs;  // paths written, manifest last
};

// Executes `command` and writes its artifacts plus manifest.json into
// out_dir. Commands: lr-certify, localize, ergodic-sweep, oscillatory,
// moments, mean-square, multi-point, spacelike-probe, kms-check, hydro.
// A certificate violation yields exit code 4 (artifacts still written).
RunResult run_experiment(const ExperimentConfig& ex, const RunOptions& opts);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace lrergo
