#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperflow/estimates.hpp"
#include "hyperflow/solver.hpp"

namespace hyperflow {

// Flat experiment configuration; mirrors the JSON config schema.
struct ExperimentConfig {
  std::string model = "burgers";  // burgers | advection | epm_torus | epm_compact | cosmo
  int grid_points = 64;
  double box_length = 6.283185307179586;  // 2 pi
  double s = 3.0;
  double delta = 0.0;        // weighted-norm experiments
  int j_max = 6;
  bool use_weighted_norm = false;
  std::string initial_family = "default";
  std::uint64_t seed = 1234;
  double base_amplitude = 0.1;
  double eps0 = 1e-2;        // perturbation amplitude schedule eps_n = eps0 2^-n
  int n_max = 6;
  double T = 1.0;
  double dt = 1e-2;
  int record_every = 1;
  int threads = 1;           // capped by HYPERFLOW_THREADS; 1 = deterministic
  // model-specific knobs
  double gamma = 2.0;
  double K = 1.0;
  double advection_speed = 1.0;
  double background_R0 = 1.0;
  double background_Rdot0 = 3.0;
  std::string output_csv;
  std::string output_json;

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  std::uint64_t config_hash() const;
};

struct FlowMapRow {
  int n = 0;
  double eps = 0.0;
  double d0_norm = 0.0;    // ||u0^n - u0|| in the experiment norm
  double sup_diff = 0.0;   // sup_t ||U^n(t) - U(t)||
  std::string status = "ok";  // ok | aborted | excluded
};

struct RunRecord {
  ExperimentConfig config;
  std::vector<FlowMapRow> rows;
  std::vector<std::vector<double>> per_time_diff;  // per n, per recorded time
  std::vector<double> times;
  double fitted_theta = 0.0;  // slope of log sup_diff vs log d0_norm
  bool base_aborted = false;
};

RunRecord run_flowmap(const ExperimentConfig& config);

struct HolderPoint {
  double s = 0.0;
  double theta = 0.0;
  std::vector<FlowMapRow> rows;
};

struct HolderReport {
  ExperimentConfig config;
  std::vector<HolderPoint> points;
};

// Modulus-of-continuity probe over a sweep of regularity indices.
HolderReport run_holder_probe(const ExperimentConfig& config,
                              const std::vector<double>& s_sweep);

struct EnergyCheckReport {
  double c_min_s = 0.0;        // at regularity s
  double c_min_s_minus_1 = 0.0;
  bool a0_variant = false;
  bool refinement_stable = true;  // c_min within factor 2 under grid doubling
  double c_min_s_refined = 0.0;
};

// Frozen-coefficient linear energy check: freezes coefficients along a
// reference nonlinear solve, re-solves the linear system, and reports the
// smallest Gronwall constant at s and s-1.
EnergyCheckReport run_energy_check(const ExperimentConfig& config);

void emit_csv(const RunRecord& record, const std::string& path);
void emit_json(const RunRecord& record, const std::string& path);

// Build the model + default initial data named by the config.
SystemModel make_model(const ExperimentConfig& config);
RealField make_initial_data(const ExperimentConfig& config);
RealField make_perturbation_direction(const ExperimentConfig& config);

// JSON report for the estimate suite (CLI `estimates` subcommand).
std::string run_estimate_suite_json(std::uint64_t seed, int samples,
                                    int grid_points);

}  // namespace hyperflow
