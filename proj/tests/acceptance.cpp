// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here and nowhere else.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperflow/cosmology.hpp"
#include "hyperflow/elliptic.hpp"
#include "hyperflow/experiments.hpp"
#include "hyperflow/makino.hpp"
#include "hyperflow/norms.hpp"
#include "hyperflow/random_fields.hpp"
#include "hyperflow/solver.hpp"

using namespace hyperflow;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %-34s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// 1. Spectral round trip and differentiation at near machine precision.
void criterion_spectral_identities() {
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    Grid g = Grid::uniform(d, d == 3 ? 16 : 64, 2.0 * kPi);
    RealField u = random_smooth_field(g, 1, 31 + d, 0.7);
    worst = std::max(worst, (inverse_transform(transform(u)) - u).max_abs());
  }
  Grid g = Grid::uniform(1, 64, 2.0 * kPi);
  RealField u(g, 1), du(g, 1);
  u.fill(0, [](double x, double, double) { return std::sin(x); });
  du.fill(0, [](double x, double, double) { return std::cos(x); });
  worst = std::max(worst, (partial_derivative(u, 0) - du).max_abs());
  report("spectral-transform-identities", worst < 1e-12, "max err " + fmt(worst));
}

// 2. Closed-form Sobolev norm of a single harmonic.
void criterion_sobolev_closed_form() {
  Grid g = Grid::uniform(1, 64, 2.0 * kPi);
  RealField u(g, 1);
  u.fill(0, [](double x, double, double) { return std::sin(x); });
  double err = std::abs(hs_norm(u, 1.0) - std::sqrt(2.0 * kPi));
  bool mono = hs_norm(u, 0.5) <= hs_norm(u, 1.0) && hs_norm(u, 1.0) <= hs_norm(u, 2.0);
  report("sobolev-norm-closed-form", err < 1e-10 && mono, "err " + fmt(err));
}

// 3. Weighted norm locality: annuli beyond the support contribute nothing.
void criterion_weighted_locality() {
  Grid g = Grid::uniform(1, 256, 16.0, true);
  RealField u = random_bump_field(g, 2.0, 77, 0.3);
  DyadicPartition part;
  double a = weighted_norm(u, NormSpec{2.0, 0.5, 4}, part);
  double b = weighted_norm(u, NormSpec{2.0, 0.5, 6}, part);
  double rel = std::abs(a - b) / b;
  report("weighted-norm-locality", rel < 1e-8, "rel diff " + fmt(rel));
}

// 4. Dyadic weighted norm against the direct integer-order quadrature.
void criterion_weighted_consistency() {
  DyadicPartition part;
  NormSpec spec{2.0, 0.5, 6};
  double ratio[2];
  int idx = 0;
  for (int n : {256, 512}) {
    Grid g = Grid::uniform(1, n, 16.0, true);
    RealField u = bump_field(g, 2.0, 1.0);
    ratio[idx++] = weighted_norm(u, spec, part) /
                   std::sqrt(weighted_norm_direct(u, 2, 0.5));
  }
  bool in_range = ratio[0] > 1.0 / 30.0 && ratio[0] < 30.0;
  double drift = std::abs(ratio[1] - ratio[0]) / std::abs(ratio[0]);
  report("weighted-norm-consistency", in_range && drift < 0.25,
         "ratio " + fmt(ratio[0]) + ", refinement drift " + fmt(drift));
}

// 5. Index monotonicity (embedding): lower indices give the smaller norm.
void criterion_weighted_embedding() {
  Grid g = Grid::uniform(1, 256, 16.0, true);
  DyadicPartition part;
  bool ok = true;
  double worst = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    RealField u = random_bump_field(g, 2.0, seed, 0.5);
    double hi = weighted_norm(u, NormSpec{3.0, 1.0, 6}, part);
    for (auto [s, delta] : {std::pair{2.0, 1.0}, {3.0, 0.0}, {1.0, -0.5}}) {
      double lo = weighted_norm(u, NormSpec{s, delta, 6}, part);
      worst = std::max(worst, lo / hi);
      if (lo > 1.05 * hi) ok = false;
    }
  }
  report("weighted-norm-embedding", ok, "max lower/upper " + fmt(worst));
}

// 6. Hyperbolic solver accuracy: characteristics oracle, conservation, order.
void criterion_solver_accuracy() {
  Grid g = Grid::uniform(1, 256, 2.0 * kPi);
  RealField u0(g, 1);
  u0.fill(0, [](double x, double, double) { return 0.1 * std::sin(x); });
  SystemModel burgers;
  burgers.dim = 1;
  burgers.ncomp = 1;
  burgers.a_adv = [](const double* u, double, int, double* m) { m[0] = u[0]; };
  SolveOptions opts;
  opts.record_every = 1 << 20;
  Trajectory tr = solve(burgers, u0, 1.0, 2e-3, opts);
  double oracle_err = (tr.states.back() - burgers_characteristics_oracle(u0, 1.0)).max_abs();

  SystemModel adv;
  adv.dim = 1;
  adv.ncomp = 1;
  adv.a_adv = [](const double*, double, int, double* m) { m[0] = 0.9; };
  Trajectory ta = solve(adv, u0, 1.0, 2e-3, opts);
  double drift = std::abs(l2_norm(ta.states.back()) - l2_norm(u0));

  SolveOptions no_dealias = opts;
  no_dealias.dealias_rule = 1.0;
  RealField steep(g, 1);
  steep.fill(0, [](double x, double, double) { return std::sin(x); });
  RealField ref = burgers_characteristics_oracle(steep, 0.5);
  double e1 =
      (solve(burgers, steep, 0.5, 1.0 / 128.0, no_dealias).states.back() - ref).max_abs();
  double e2 =
      (solve(burgers, steep, 0.5, 1.0 / 256.0, no_dealias).states.back() - ref).max_abs();
  double order = std::log2(e1 / e2);

  bool ok = oracle_err < 1e-6 && drift < 1e-8 && order > 3.8 && order < 4.2;
  report("hyperbolic-solver-accuracy", ok,
         "oracle err " + fmt(oracle_err) + ", L2 drift " + fmt(drift) +
             ", order " + fmt(order));
}

// 7. Poisson solvers: torus residual and free-space far field.
void criterion_poisson() {
  Grid g = Grid::uniform(3, 16, 2.0 * kPi);
  RealField f(g, 1);
  f.fill(0, [](double x, double y, double z) {
    return std::sin(x) * std::cos(y) + std::sin(2.0 * z);
  });
  RealField phi = poisson_torus_zero_mean(f);
  RealField lap(g, 1);
  for (int a = 0; a < 3; ++a)
    lap += partial_derivative(partial_derivative(phi, a), a);
  double residual = (lap - f).max_abs();

  double L = 16.0, sigma = 0.5, mass = 2.0;
  Grid gc = Grid::uniform(3, 64, L, true);
  RealField rho = gaussian_field(gc, sigma, mass);
  RealField pot = poisson_free_space(rho);
  double far = 0.0;
  std::array<int, 3> ix{};
  for (std::size_t i = 0; i < gc.num_points(); ++i) {
    gc.unravel(i, ix);
    double x = gc.coord(0, ix[0]), y = gc.coord(1, ix[1]), z = gc.coord(2, ix[2]);
    double r = std::sqrt(x * x + y * y + z * z);
    if (r < 3.0 * sigma || r > 0.4 * L) continue;
    double expect = -mass * std::erf(r / (std::sqrt(2.0) * sigma)) / r;
    far = std::max(far, std::abs(pot.at(0, i) - expect) / std::abs(expect));
  }
  report("poisson-solvers", residual < 1e-10 && far < 1e-4,
         "torus residual " + fmt(residual) + ", far-field rel err " + fmt(far));
}

// 8. Background scale-factor ODE: invariant drift and initial acceleration.
void criterion_background() {
  auto traj = integrate_background(1.0, 3.0, 1.0, 1e-3);
  double e0 = traj.front().first_integral();
  double drift = 0.0;
  for (const BackgroundState& s : traj)
    drift = std::max(drift, std::abs(s.first_integral() - e0));
  auto fine = integrate_background(1.0, 0.0, 2e-4, 1e-4);
  double acc = (fine[2].R - 2.0 * fine[1].R + fine[0].R) / (1e-4 * 1e-4);
  double acc_err = std::abs(acc + 4.0 * kPi / 3.0);
  report("background-ode", drift < 1e-10 && acc_err < 1e-5,
         "invariant drift " + fmt(drift) + ", accel err " + fmt(acc_err));
}

// 9. Sonic-variable constants across equation-of-state parameters.
void criterion_makino_constants() {
  double worst = 0.0;
  for (auto [K, gamma] : {std::pair{1.0, 1.5}, {1.0, 2.0}, {2.0, 5.0 / 3.0}}) {
    EpmParams p(K, gamma);
    for (double rho : {1e-3, 0.5, 2.0}) {
      double w = p.makino_factor() * std::pow(rho, 0.5 * (gamma - 1.0));
      double lhs = p.c_k_gamma() * std::pow(w, p.beta());
      worst = std::max(worst, std::abs(lhs - 4.0 * kPi * rho) /
                                  (4.0 * kPi * rho));
    }
  }
  double c12_err = std::abs(EpmParams(1.0, 2.0).c_k_gamma() - kPi / 2.0);
  report("makino-constants", worst < 1e-12 && c12_err < 1e-14,
         "max rel err " + fmt(worst));
}

// 10. Estimate suite: finite ratios, refinement-stable, JSON report on disk.
void criterion_estimate_suite() {
  std::string text = run_estimate_suite_json(7, 3, 128);
  std::ofstream out("estimate_suite_report.json");
  out << text << '\n';
  out.close();
  nlohmann::json j = nlohmann::json::parse(text);
  bool ok = j["all_finite"].get<bool>();
  double worst_change = 0.0;
  for (const char* k : {"kato_ponce", "multiplication", "multiplication_weighted",
                        "power", "power_weighted", "difference"}) {
    double ch = j[k]["relative_change"].get<double>();
    worst_change = std::max(worst_change, ch);
    if (!(ch < 0.25)) ok = false;
    if (!(j[k]["ratio"].get<double>() >= 0.0)) ok = false;
  }
  report("estimate-suite", ok, "worst refinement change " + fmt(worst_change));
}

// 11. Smallest Gronwall constants along reference solves.
void criterion_energy_constants() {
  ExperimentConfig adv;
  adv.model = "advection";
  adv.grid_points = 64;
  adv.s = 2.0;
  adv.T = 0.5;
  adv.dt = 5e-3;
  EnergyCheckReport ra = run_energy_check(adv);

  ExperimentConfig bur;
  bur.model = "burgers";
  bur.grid_points = 64;
  bur.s = 3.0;
  bur.T = 0.5;
  bur.dt = 5e-3;
  EnergyCheckReport rb = run_energy_check(bur);

  ExperimentConfig cos;
  cos.model = "cosmo";
  cos.grid_points = 16;
  cos.s = 3.0;
  cos.T = 0.3;
  cos.dt = 5e-3;
  EnergyCheckReport rc = run_energy_check(cos);

  bool ok = ra.c_min_s == 0.0 && std::isfinite(rb.c_min_s) &&
            rb.refinement_stable && rc.a0_variant && std::isfinite(rc.c_min_s) &&
            rc.refinement_stable;
  report("energy-inequality-constants", ok,
         "advection " + fmt(ra.c_min_s) + ", burgers " + fmt(rb.c_min_s) +
             " (refined " + fmt(rb.c_min_s_refined) + "), a0-variant " +
             fmt(rc.c_min_s) + " (refined " + fmt(rc.c_min_s_refined) + ")");
}

// 12. Flow-map continuity: perturbation distances shrink with the data.
void criterion_flowmap_continuity() {
  bool ok = true;
  std::string detail;
  auto run_case = [&](ExperimentConfig cfg, const char* tag) {
    RunRecord rec = run_flowmap(cfg);
    bool case_ok = !rec.base_aborted;
    for (const FlowMapRow& r : rec.rows) case_ok = case_ok && r.status == "ok";
    for (std::size_t i = 0; i + 1 < rec.rows.size(); ++i)
      if (rec.rows[i + 1].sup_diff > 1.05 * rec.rows[i].sup_diff) case_ok = false;
    double contraction =
        rec.rows.back().sup_diff / std::max(rec.rows.front().sup_diff, 1e-300);
    if (!(contraction < 0.05)) case_ok = false;
    detail += std::string(tag) + " ratio " + fmt(contraction) + "; ";
    ok = ok && case_ok;
  };

  ExperimentConfig bur;
  bur.model = "burgers";
  bur.grid_points = 64;
  bur.s = 3.0;
  bur.T = 1.0;
  bur.dt = 5e-3;
  bur.n_max = 6;
  bur.record_every = 20;
  run_case(bur, "burgers");

  ExperimentConfig epm;
  epm.model = "epm_torus";
  epm.grid_points = 16;
  epm.s = 3.0;
  epm.gamma = 2.0;
  epm.T = 1.0;
  epm.dt = 1e-2;
  epm.n_max = 6;
  epm.record_every = 20;
  run_case(epm, "epm");

  ExperimentConfig cos;
  cos.model = "cosmo";
  cos.grid_points = 16;
  cos.s = 3.0;
  cos.T = 0.5;
  cos.dt = 1e-2;
  cos.n_max = 6;
  cos.record_every = 10;
  run_case(cos, "cosmo");

  report("flow-map-continuity", ok, detail);
}

}  // namespace

int main() {
  criterion_spectral_identities();
  criterion_sobolev_closed_form();
  criterion_weighted_locality();
  criterion_weighted_consistency();
  criterion_weighted_embedding();
  criterion_solver_accuracy();
  criterion_poisson();
  criterion_background();
  criterion_makino_constants();
  criterion_energy_constants();
  criterion_estimate_suite();
  criterion_flowmap_continuity();
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
