// hyperflow command-line front end: numerical experiments on symmetric
// hyperbolic systems, Sobolev-norm calculus, and self-gravitating fluids.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperflow/cosmology.hpp"
#include "hyperflow/experiments.hpp"
#include "hyperflow/random_fields.hpp"

namespace hf = hyperflow;

namespace {

struct CommonOpts {
  std::string config_path;
  bool deterministic = false;
};

void add_config_flags(CLI::App* cmd, CommonOpts& common, hf::ExperimentConfig& cfg) {
  cmd->add_option("--config", common.config_path, "JSON config file");
  cmd->add_option("--model", cfg.model,
                  "burgers | advection | epm_torus | epm_compact | cosmo");
  cmd->add_option("--n", cfg.grid_points, "grid points per axis");
  cmd->add_option("--L", cfg.box_length, "box length");
  cmd->add_option("--s", cfg.s, "regularity index");
  cmd->add_option("--delta", cfg.delta, "weight index");
  cmd->add_flag("--weighted", cfg.use_weighted_norm, "use the weighted norm");
  cmd->add_option("--family", cfg.initial_family, "initial-data family");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--amp", cfg.base_amplitude, "initial-data amplitude");
  cmd->add_option("--eps0", cfg.eps0, "base perturbation amplitude");
  cmd->add_option("--n-max", cfg.n_max, "number of perturbation halvings");
  cmd->add_option("--T", cfg.T, "final time");
  cmd->add_option("--dt", cfg.dt, "time step");
  cmd->add_option("--record-every", cfg.record_every, "steps between records");
  cmd->add_option("--threads", cfg.threads, "worker threads (capped by HYPERFLOW_THREADS)");
  cmd->add_option("--gamma", cfg.gamma, "adiabatic exponent");
  cmd->add_option("--K", cfg.K, "pressure constant");
  cmd->add_option("--speed", cfg.advection_speed, "advection speed");
  cmd->add_option("--R0", cfg.background_R0, "background scale factor at t=0");
  cmd->add_option("--Rdot0", cfg.background_Rdot0, "background expansion rate at t=0");
  cmd->add_option("--csv", cfg.output_csv, "CSV output path");
  cmd->add_option("--json", cfg.output_json, "JSON output path");
  cmd->add_flag("--deterministic", common.deterministic,
                "single worker, fixed evaluation order");
}

hf::ExperimentConfig resolve_config(CLI::App* cmd, const CommonOpts& common,
                                    const hf::ExperimentConfig& flags) {
  hf::ExperimentConfig cfg = flags;
  if (!common.config_path.empty()) {
    cfg = hf::ExperimentConfig::from_json_file(common.config_path);
    // explicit flags override file values
    auto override_if = [&](const char* name, auto member) {
      if (cmd->count(name) > 0) cfg.*member = flags.*member;
    };
    override_if("--model", &hf::ExperimentConfig::model);
    override_if("--n", &hf::ExperimentConfig::grid_points);
    override_if("--L", &hf::ExperimentConfig::box_length);
    override_if("--s", &hf::ExperimentConfig::s);
    override_if("--delta", &hf::ExperimentConfig::delta);
    override_if("--weighted", &hf::ExperimentConfig::use_weighted_norm);
    override_if("--family", &hf::ExperimentConfig::initial_family);
    override_if("--seed", &hf::ExperimentConfig::seed);
    override_if("--amp", &hf::ExperimentConfig::base_amplitude);
    override_if("--eps0", &hf::ExperimentConfig::eps0);
    override_if("--n-max", &hf::ExperimentConfig::n_max);
    override_if("--T", &hf::ExperimentConfig::T);
    override_if("--dt", &hf::ExperimentConfig::dt);
    override_if("--record-every", &hf::ExperimentConfig::record_every);
    override_if("--threads", &hf::ExperimentConfig::threads);
    override_if("--gamma", &hf::ExperimentConfig::gamma);
    override_if("--K", &hf::ExperimentConfig::K);
    override_if("--speed", &hf::ExperimentConfig::advection_speed);
    override_if("--R0", &hf::ExperimentConfig::background_R0);
    override_if("--Rdot0", &hf::ExperimentConfig::background_Rdot0);
    override_if("--csv", &hf::ExperimentConfig::output_csv);
    override_if("--json", &hf::ExperimentConfig::output_json);
  }
  if (common.deterministic) cfg.threads = 1;
  return cfg;
}

int cmd_solve(const hf::ExperimentConfig& cfg) {
  hf::SystemModel model = hf::make_model(cfg);
  hf::RealField u0 = hf::make_initial_data(cfg);
  hf::SolveOptions opts;
  opts.s_diag = cfg.s;
  opts.record_every = cfg.record_every;
  if (model.has_a0()) opts.energy_m = static_cast<int>(cfg.s);
  hf::Trajectory tr = hf::solve(model, u0, cfg.T, cfg.dt, opts);

  std::ostringstream csv;
  csv << "t,linf,l2,hs,energy_m\r\n";
  for (const hf::StepDiagnostics& d : tr.diagnostics)
    csv << d.t << ',' << d.linf << ',' << d.l2 << ',' << d.hs << ','
        << d.energy_m << "\r\n";
  if (!cfg.output_csv.empty()) {
    std::ofstream out(cfg.output_csv, std::ios::binary);
    out << csv.str();
  } else {
    std::cout << csv.str();
  }
  if (tr.aborted)
    std::cerr << "solve aborted: " << tr.abort_reason << "\n";
  if (!cfg.output_json.empty()) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::json::parse(cfg.to_json_text());
    j["config_hash"] = cfg.config_hash();
    j["aborted"] = tr.aborted;
    j["abort_reason"] = tr.abort_reason;
    j["final_time"] = tr.times.empty() ? 0.0 : tr.times.back();
    std::ofstream out(cfg.output_json);
    out << j.dump(2) << '\n';
  }
  return tr.aborted ? 2 : 0;
}

int cmd_norm(const hf::ExperimentConfig& cfg) {
  hf::Grid grid = hf::Grid::uniform(1, cfg.grid_points, cfg.box_length,
                                    cfg.use_weighted_norm);
  hf::RealField u(grid, 1);
  if (cfg.initial_family == "bump") {
    grid = hf::Grid::uniform(1, cfg.grid_points, cfg.box_length, true);
    u = hf::bump_field(grid, 0.2 * cfg.box_length, cfg.base_amplitude);
  } else if (cfg.initial_family == "random") {
    u = hf::random_smooth_field(grid, 1, cfg.seed);
    u *= cfg.base_amplitude;
  } else {
    const double L = cfg.box_length;
    const double a = cfg.base_amplitude;
    u.fill(0, [L, a](double x, double, double) {
      return a * std::sin(2.0 * M_PI * x / L);
    });
  }
  double value;
  if (cfg.use_weighted_norm) {
    hf::NormSpec spec{cfg.s, cfg.delta, cfg.j_max};
    hf::DyadicPartition part;
    part.j_max = cfg.j_max;
    value = hf::weighted_norm(u, spec, part);
  } else {
    value = hf::hs_norm(u, cfg.s);
  }
  std::printf("%.15g\n", value);
  return 0;
}

int cmd_flowmap(const hf::ExperimentConfig& cfg) {
  hf::RunRecord rec = hf::run_flowmap(cfg);
  if (!cfg.output_csv.empty()) hf::emit_csv(rec, cfg.output_csv);
  if (!cfg.output_json.empty()) hf::emit_json(rec, cfg.output_json);
  std::printf("n,eps,d0_norm,sup_diff,status\n");
  for (const hf::FlowMapRow& r : rec.rows)
    std::printf("%d,%.6g,%.6g,%.6g,%s\n", r.n, r.eps, r.d0_norm, r.sup_diff,
                r.status.c_str());
  std::printf("fitted_theta %.6g\n", rec.fitted_theta);
  return rec.base_aborted ? 2 : 0;
}

int cmd_holder(const hf::ExperimentConfig& cfg, const std::vector<double>& s_list) {
  std::vector<double> sweep = s_list;
  if (sweep.empty()) sweep = {2.0, 2.5, 3.0};
  hf::HolderReport rep = hf::run_holder_probe(cfg, sweep);
  std::printf("s,theta\n");
  for (const hf::HolderPoint& p : rep.points)
    std::printf("%.6g,%.6g\n", p.s, p.theta);
  if (!cfg.output_json.empty()) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::json::parse(cfg.to_json_text());
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const hf::HolderPoint& p : rep.points) {
      nlohmann::ordered_json e;
      e["s"] = p.s;
      e["theta"] = p.theta;
      pts.push_back(e);
    }
    j["points"] = pts;
    std::ofstream out(cfg.output_json);
    out << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_energy_check(const hf::ExperimentConfig& cfg) {
  hf::EnergyCheckReport rep = hf::run_energy_check(cfg);
  std::printf("c_min_s %.6g\n", rep.c_min_s);
  std::printf("c_min_s_minus_1 %.6g\n", rep.c_min_s_minus_1);
  std::printf("c_min_s_refined %.6g\n", rep.c_min_s_refined);
  std::printf("a0_variant %d\n", rep.a0_variant ? 1 : 0);
  std::printf("refinement_stable %d\n", rep.refinement_stable ? 1 : 0);
  if (!cfg.output_json.empty()) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::json::parse(cfg.to_json_text());
    j["c_min_s"] = rep.c_min_s;
    j["c_min_s_minus_1"] = rep.c_min_s_minus_1;
    j["c_min_s_refined"] = rep.c_min_s_refined;
    j["a0_variant"] = rep.a0_variant;
    j["refinement_stable"] = rep.refinement_stable;
    std::ofstream out(cfg.output_json);
    out << j.dump(2) << '\n';
  }
  return rep.refinement_stable ? 0 : 2;
}

int cmd_estimates(std::uint64_t seed, int samples, int n, const std::string& out_path) {
  std::string report = hf::run_estimate_suite_json(seed, samples, n);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << report << '\n';
  }
  std::cout << report << '\n';
  return 0;
}

int cmd_cosmo_background(double R0, double Rdot0, double T, double dt,
                         const std::string& out_path) {
  std::vector<hf::BackgroundState> traj = hf::integrate_background(R0, Rdot0, T, dt);
  std::ostringstream csv;
  csv << "t,R,Rdot,rho_hat,first_integral\r\n";
  for (const hf::BackgroundState& s : traj)
    csv << s.t << ',' << s.R << ',' << s.Rdot << ',' << s.rho_hat() << ','
        << s.first_integral() << "\r\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << csv.str();
  } else {
    std::cout << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperflow: symmetric hyperbolic systems lab"};
  app.require_subcommand(1);

  hf::ExperimentConfig cfg_solve, cfg_norm, cfg_flow, cfg_holder, cfg_energy;
  CommonOpts com_solve, com_norm, com_flow, com_holder, com_energy;

  CLI::App* c_solve = app.add_subcommand("solve", "integrate one model and dump diagnostics");
  add_config_flags(c_solve, com_solve, cfg_solve);

  CLI::App* c_norm = app.add_subcommand("norm", "evaluate a Sobolev or weighted norm");
  add_config_flags(c_norm, com_norm, cfg_norm);

  CLI::App* c_flow = app.add_subcommand("flowmap", "data-to-solution continuity experiment");
  add_config_flags(c_flow, com_flow, cfg_flow);

  std::vector<double> s_list;
  CLI::App* c_holder = app.add_subcommand("holder", "modulus-of-continuity sweep over s");
  add_config_flags(c_holder, com_holder, cfg_holder);
  c_holder->add_option("--s-list", s_list, "regularity indices to sweep");

  CLI::App* c_energy = app.add_subcommand("energy-check", "smallest Gronwall constant along a solve");
  add_config_flags(c_energy, com_energy, cfg_energy);

  std::uint64_t est_seed = 7;
  int est_samples = 3, est_n = 128;
  std::string est_out;
  CLI::App* c_est = app.add_subcommand("estimates", "product/commutator/power estimate suite");
  c_est->add_option("--seed", est_seed, "RNG seed");
  c_est->add_option("--samples", est_samples, "sample fields per estimate");
  c_est->add_option("--n", est_n, "grid points");
  c_est->add_option("--json", est_out, "JSON output path");

  double bg_R0 = 1.0, bg_Rdot0 = 0.0, bg_T = 0.5, bg_dt = 1e-3;
  std::string bg_out;
  CLI::App* c_bg = app.add_subcommand("cosmo-background", "homogeneous dust background trajectory");
  c_bg->add_option("--R0", bg_R0, "scale factor at t=0");
  c_bg->add_option("--Rdot0", bg_Rdot0, "expansion rate at t=0");
  c_bg->add_option("--T", bg_T, "final time");
  c_bg->add_option("--dt", bg_dt, "time step");
  c_bg->add_option("--csv", bg_out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_solve->parsed()) return cmd_solve(resolve_config(c_solve, com_solve, cfg_solve));
    if (c_norm->parsed()) return cmd_norm(resolve_config(c_norm, com_norm, cfg_norm));
    if (c_flow->parsed()) return cmd_flowmap(resolve_config(c_flow, com_flow, cfg_flow));
    if (c_holder->parsed())
      return cmd_holder(resolve_config(c_holder, com_holder, cfg_holder), s_list);
    if (c_energy->parsed())
      return cmd_energy_check(resolve_config(c_energy, com_energy, cfg_energy));
    if (c_est->parsed()) return cmd_estimates(est_seed, est_samples, est_n, est_out);
    if (c_bg->parsed()) return cmd_cosmo_background(bg_R0, bg_Rdot0, bg_T, bg_dt, bg_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
