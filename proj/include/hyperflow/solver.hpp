#pragma once

#include "hyperflow/system_model.hpp"

namespace hyperflow {

struct SolveOptions {
  double s_diag = 0.0;      // regularity index for recorded H^s norms
  int energy_m = -1;        // record E_m when >= 0 and A0 is present
  int record_every = 1;     // steps between recorded states
  double dealias_rule = 2.0 / 3.0;
  double cfl = 0.4;
  double blowup_factor = 1e3;   // sentinel on ||U||_inf growth
  bool check_spd = true;        // monitor A0 positive definiteness
};

// Classical RK4 method-of-lines integration of the system on [0, T].
// Throws on CFL violation or loss of A0 positivity; a blow-up sentinel
// returns the partial trajectory flagged instead.
Trajectory solve(const SystemModel& system, const RealField& u0, double T,
                 double dt, const SolveOptions& opts = {});

struct SymmetryReport {
  std::vector<double> max_asymmetry_a;  // per axis
  double a0_lambda_min = 1.0;
  double a0_lambda_max = 1.0;
  double positivity_constant = 1.0;  // C with C^-1 <= lambda(A0) <= C
};

SymmetryReport check_symmetry_positivity(const SystemModel& system,
                                         const RealField& state, double t);

// E_m = sum_{|alpha|<=m} <d^alpha U, A0 d^alpha U>_{L^2}.
double weighted_energy(const RealField& state, const SystemModel& system,
                       double t, int m);

// Pre-shock Burgers reference via characteristics: solves x = xi + t u0(xi)
// per node by safeguarded Newton and returns u(t,x) = u0(xi).
RealField burgers_characteristics_oracle(const RealField& u0, double t);

// Shock time 1/max(-u0') estimated on a refined sample of u0'.
double burgers_shock_time(const RealField& u0);

}  // namespace hyperflow
