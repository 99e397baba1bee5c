#pragma once

#include <functional>
#include <string>

#include "hyperflow/field.hpp"

namespace hyperflow {

// Evaluation contract for one quasilinear symmetric hyperbolic system
//   A0(U;t) dU/dt + sum_a A^a(U;t) dU/dx_a + B(U;t) U = G(U;t).
// Matrix evaluators are pointwise in the state vector; the source G may
// be nonlocal (elliptic solves) and therefore sees the whole field.
struct SystemModel {
  std::string name;
  int dim = 1;
  int ncomp = 1;

  // Writes the N x N row-major matrix at one node; null means identity.
  std::function<void(const double* u, double t, double* mat)> a0;
  // A^a for axis in [0, dim); required, pointwise symmetric.
  std::function<void(const double* u, double t, int axis, double* mat)> a_adv;
  // Lower-order matrix; null means zero.
  std::function<void(const double* u, double t, double* mat)> b;
  // Source term; null means zero.
  std::function<RealField(const RealField& state, double t)> source;

  // Declares assumption A^a(0) = 0 (checked by tests for models that set it).
  bool vanishing_at_zero = false;

  bool has_a0() const { return static_cast<bool>(a0); }
};

struct StepDiagnostics {
  double t = 0.0;
  double linf = 0.0;
  double l2 = 0.0;
  double hs = 0.0;        // H^{s_diag} norm
  double energy_m = -1.0; // A0-weighted E_m; -1 when not computed
  std::vector<double> comp_means;  // integral of each component
};

// Time-stamped solver output plus per-record diagnostics.
struct Trajectory {
  std::vector<double> times;
  std::vector<RealField> states;
  std::vector<StepDiagnostics> diagnostics;
  bool aborted = false;
  std::string abort_reason;

  const RealField& state_at(std::size_t i) const { return states[i]; }
};

}  // namespace hyperflow
