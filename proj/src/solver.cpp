#include "hyperflow/solver.hpp"

#include <cmath>
#include <limits>

#include "hyperflow/norms.hpp"
#include "hyperflow/small_matrix.hpp"
#include "hyperflow/spectral_ops.hpp"

namespace hyperflow {

namespace {

// max over nodes and axes of the spectral radius of A^a(U;t).
double max_wave_speed(const SystemModel& sys, const RealField& u, double t) {
  const int n = sys.ncomp;
  const std::size_t np = u.num_points();
  double mat[kMaxComp * kMaxComp];
  double lam[kMaxComp];
  double uvec[kMaxComp];
  double speed = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    for (int c = 0; c < n; ++c) uvec[c] = u.at(c, i);
    for (int a = 0; a < sys.dim; ++a) {
      sys.a_adv(uvec, t, a, mat);
      symmetric_eigenvalues(mat, lam, n);
      for (int c = 0; c < n; ++c) speed = std::max(speed, std::abs(lam[c]));
    }
  }
  return speed;
}

// dU/dt = A0^{-1} [ G - B U - sum_a A^a dU/dx_a ], dealiased.
RealField rhs(const SystemModel& sys, const RealField& u, double t,
              const SolveOptions& opts) {
  const int n = sys.ncomp;
  const std::size_t np = u.num_points();

  std::vector<RealField> du;
  du.reserve(sys.dim);
  {
    SpectralField spec = transform(u);
    for (int a = 0; a < sys.dim; ++a) {
      SpectralField da = spec;
      partial_derivative_inplace(da, a);
      du.push_back(inverse_transform(da));
    }
  }

  RealField out = sys.source ? sys.source(u, t) : RealField(u.grid(), n);

  double mat[kMaxComp * kMaxComp];
  double uvec[kMaxComp];
  double acc[kMaxComp];
  double sol[kMaxComp];
  for (std::size_t i = 0; i < np; ++i) {
    for (int c = 0; c < n; ++c) {
      uvec[c] = u.at(c, i);
      acc[c] = out.at(c, i);
    }
    for (int a = 0; a < sys.dim; ++a) {
      sys.a_adv(uvec, t, a, mat);
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += mat[r * n + c] * du[a].at(c, i);
        acc[r] -= s;
      }
    }
    if (sys.b) {
      sys.b(uvec, t, mat);
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += mat[r * n + c] * uvec[c];
        acc[r] -= s;
      }
    }
    if (sys.a0) {
      sys.a0(uvec, t, mat);
      solve_linear(mat, acc, sol, n);
      for (int c = 0; c < n; ++c) out.at(c, i) = sol[c];
    } else {
      for (int c = 0; c < n; ++c) out.at(c, i) = acc[c];
    }
  }
  dealias_inplace(out, opts.dealias_rule);
  return out;
}

StepDiagnostics make_diagnostics(const SystemModel& sys, const RealField& u,
                                 double t, const SolveOptions& opts) {
  StepDiagnostics d;
  d.t = t;
  d.linf = u.max_abs();
  d.l2 = l2_norm(u);
  d.hs = hs_norm(u, opts.s_diag);
  if (opts.energy_m >= 0 && sys.has_a0())
    d.energy_m = weighted_energy(u, sys, t, opts.energy_m);
  d.comp_means.resize(u.ncomp());
  for (int c = 0; c < u.ncomp(); ++c) d.comp_means[c] = u.integral(c);
  return d;
}

}  // namespace

Trajectory solve(const SystemModel& system, const RealField& u0, double T,
                 double dt, const SolveOptions& opts) {
  if (u0.ncomp() != system.ncomp || u0.grid().dim != system.dim)
    throw std::invalid_argument("solve: initial data does not match the system");
  if (!(dt > 0.0) || !(T >= 0.0)) throw std::invalid_argument("solve: bad T or dt");

  Trajectory traj;
  RealField u = u0;
  const double linf0 = std::max(u0.max_abs(), 1e-12);
  const double h = u0.grid().min_spacing();

  traj.times.push_back(0.0);
  traj.states.push_back(u);
  traj.diagnostics.push_back(make_diagnostics(system, u, 0.0, opts));

  const int nsteps = static_cast<int>(std::llround(T / dt));
  for (int step = 0; step < nsteps; ++step) {
    double t = step * dt;

    double speed = max_wave_speed(system, u, t);
    if (speed > 0.0 && dt > opts.cfl * h / speed)
      throw std::runtime_error("solve: CFL violation, dt too large");

    if (opts.check_spd && system.has_a0()) {
      SymmetryReport rep = check_symmetry_positivity(system, u, t);
      if (rep.a0_lambda_min <= 1e-12)
        throw std::runtime_error("solve: A0 lost positive definiteness");
    }

    RealField k1 = rhs(system, u, t, opts);
    RealField u2 = u;
    for (std::size_t i = 0; i < u.data().size(); ++i)
      u2.data()[i] += 0.5 * dt * k1.data()[i];
    RealField k2 = rhs(system, u2, t + 0.5 * dt, opts);
    RealField u3 = u;
    for (std::size_t i = 0; i < u.data().size(); ++i)
      u3.data()[i] += 0.5 * dt * k2.data()[i];
    RealField k3 = rhs(system, u3, t + 0.5 * dt, opts);
    RealField u4 = u;
    for (std::size_t i = 0; i < u.data().size(); ++i)
      u4.data()[i] += dt * k3.data()[i];
    RealField k4 = rhs(system, u4, t + dt, opts);
    for (std::size_t i = 0; i < u.data().size(); ++i)
      u.data()[i] += dt / 6.0 *
                     (k1.data()[i] + 2.0 * k2.data()[i] + 2.0 * k3.data()[i] +
                      k4.data()[i]);

    double tn = (step + 1) * dt;
    if (!u.finite()) {
      traj.aborted = true;
      traj.abort_reason = "NaN detected";
      return traj;
    }
    if (u.max_abs() > opts.blowup_factor * linf0) {
      traj.aborted = true;
      traj.abort_reason = "blow-up sentinel: ||U||_inf growth";
      return traj;
    }

    if ((step + 1) % opts.record_every == 0 || step + 1 == nsteps) {
      traj.times.push_back(tn);
      traj.states.push_back(u);
      traj.diagnostics.push_back(make_diagnostics(system, u, tn, opts));
    }
  }
  return traj;
}

SymmetryReport check_symmetry_positivity(const SystemModel& system,
                                         const RealField& state, double t) {
  const int n = system.ncomp;
  const std::size_t np = state.num_points();
  SymmetryReport rep;
  rep.max_asymmetry_a.assign(system.dim, 0.0);
  double mat[kMaxComp * kMaxComp];
  double lam[kMaxComp];
  double uvec[kMaxComp];
  double lmin = 1.0, lmax = 1.0;
  bool first = true;
  for (std::size_t i = 0; i < np; ++i) {
    for (int c = 0; c < n; ++c) uvec[c] = state.at(c, i);
    for (int a = 0; a < system.dim; ++a) {
      system.a_adv(uvec, t, a, mat);
      rep.max_asymmetry_a[a] =
          std::max(rep.max_asymmetry_a[a], max_asymmetry(mat, n));
    }
    if (system.has_a0()) {
      system.a0(uvec, t, mat);
      symmetric_eigenvalues(mat, lam, n);
      for (int c = 0; c < n; ++c) {
        if (first || lam[c] < lmin) lmin = lam[c];
        if (first || lam[c] > lmax) lmax = lam[c];
        first = false;
      }
    }
  }
  rep.a0_lambda_min = lmin;
  rep.a0_lambda_max = lmax;
  rep.positivity_constant =
      lmin > 0.0 ? std::max({lmax, 1.0 / lmin, 1.0}) : std::numeric_limits<double>::infinity();
  return rep;
}

double weighted_energy(const RealField& state, const SystemModel& system,
                       double t, int m) {
  if (m < 0) throw std::invalid_argument("weighted_energy: m must be >= 0");
  const int n = system.ncomp;
  const std::size_t np = state.num_points();
  double mat[kMaxComp * kMaxComp];
  double uvec[kMaxComp];
  double energy = 0.0;
  for (const auto& alpha : multi_indices(system.dim, m)) {
    RealField der = multi_derivative(state, alpha);
    double term = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      for (int c = 0; c < n; ++c) uvec[c] = state.at(c, i);
      if (system.has_a0()) {
        system.a0(uvec, t, mat);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            term += der.at(r, i) * mat[r * n + c] * der.at(c, i);
      } else {
        for (int c = 0; c < n; ++c) term += der.at(c, i) * der.at(c, i);
      }
    }
    energy += term * state.grid().cell_volume();
  }
  return energy;
}

namespace {

// Trigonometric evaluation of a 1-D single-component field and its derivative.
struct TrigSeries {
  const Grid grid;
  std::vector<std::complex<double>> coef;

  explicit TrigSeries(const RealField& f) : grid(f.grid()) {
    SpectralField spec = transform(f);
    coef.assign(spec.comp(0), spec.comp(0) + grid.num_points());
  }
  double value(double x) const {
    std::complex<double> s = 0.0;
    double y = x - grid.origin(0);
    for (std::size_t m = 0; m < coef.size(); ++m) {
      double k = grid.wavenumber(0, static_cast<int>(m));
      s += coef[m] * std::exp(std::complex<double>(0.0, k * y));
    }
    return s.real();
  }
  double derivative(double x) const {
    std::complex<double> s = 0.0;
    double y = x - grid.origin(0);
    const int nyq = -grid.n[0] / 2;
    for (std::size_t m = 0; m < coef.size(); ++m) {
      if (grid.mode(0, static_cast<int>(m)) == nyq) continue;
      double k = grid.wavenumber(0, static_cast<int>(m));
      s += coef[m] * std::complex<double>(0.0, k) *
           std::exp(std::complex<double>(0.0, k * y));
    }
    return s.real();
  }
};

}  // namespace

double burgers_shock_time(const RealField& u0) {
  if (u0.grid().dim != 1 || u0.ncomp() != 1)
    throw std::invalid_argument("burgers oracle: expects 1-D scalar data");
  TrigSeries series(u0);
  const int refine = 8;
  double max_neg_slope = 0.0;
  const Grid& g = u0.grid();
  for (int i = 0; i < g.n[0] * refine; ++i) {
    double x = g.origin(0) + i * g.box[0] / (g.n[0] * refine);
    max_neg_slope = std::max(max_neg_slope, -series.derivative(x));
  }
  return max_neg_slope > 0.0 ? 1.0 / max_neg_slope
                             : std::numeric_limits<double>::infinity();
}

RealField burgers_characteristics_oracle(const RealField& u0, double t) {
  if (u0.grid().dim != 1 || u0.ncomp() != 1)
    throw std::invalid_argument("burgers oracle: expects 1-D scalar data");
  if (t < 0.0) throw std::invalid_argument("burgers oracle: t must be >= 0");
  double t_shock = burgers_shock_time(u0);
  if (t >= t_shock)
    throw std::runtime_error("burgers oracle: t is at or beyond the shock time");

  TrigSeries series(u0);
  const Grid& g = u0.grid();
  RealField out(g, 1);
  const double umax = u0.max_abs();
  for (int i = 0; i < g.n[0]; ++i) {
    double x = g.coord(0, i);
    // g(xi) = xi + t u0(xi) - x is strictly increasing pre-shock.
    double lo = x - t * umax - 1e-12, hi = x + t * umax + 1e-12;
    double xi = x;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double f = xi + t * series.value(xi) - x;
      if (std::abs(f) < 1e-13 * std::max(1.0, std::abs(x))) {
        converged = true;
        break;
      }
      if (f > 0.0) hi = xi;
      else lo = xi;
      double fp = 1.0 + t * series.derivative(xi);
      double next = fp > 1e-10 ? xi - f / fp : 0.5 * (lo + hi);
      if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
      xi = next;
    }
    if (!converged)
      throw std::runtime_error("burgers oracle: Newton iteration failed to converge");
    out.at(0, i) = series.value(xi);
  }
  return out;
}

}  // namespace hyperflow
