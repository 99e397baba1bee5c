#include "hyperflow/cosmology.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperflow/elliptic.hpp"
#include "hyperflow/spectral_ops.hpp"

namespace hyperflow {

namespace {

constexpr double kFourPiThirds = 4.0 * std::numbers::pi / 3.0;

// One RK4 step of (R, Rdot)' = (Rdot, -(4 pi/3) R^-2).
void rk4_step(double& R, double& Rdot, double h) {
  auto acc = [](double r) { return -kFourPiThirds / (r * r); };
  double k1R = Rdot, k1V = acc(R);
  double k2R = Rdot + 0.5 * h * k1V, k2V = acc(R + 0.5 * h * k1R);
  double k3R = Rdot + 0.5 * h * k2V, k3V = acc(R + 0.5 * h * k2R);
  double k4R = Rdot + h * k3V, k4V = acc(R + h * k3R);
  R += h / 6.0 * (k1R + 2 * k2R + 2 * k3R + k4R);
  Rdot += h / 6.0 * (k1V + 2 * k2V + 2 * k3V + k4V);
}

}  // namespace

double BackgroundState::first_integral() const {
  return 0.5 * Rdot * Rdot - kFourPiThirds / R;
}

std::vector<BackgroundState> integrate_background(double R0, double Rdot0,
                                                  double T, double dt) {
  if (!(R0 > 0.0)) throw std::invalid_argument("integrate_background: R0 must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_background: dt must be > 0");
  std::vector<BackgroundState> out;
  double R = R0, Rdot = Rdot0;
  int nsteps = static_cast<int>(std::llround(T / dt));
  out.push_back({0.0, R, Rdot});
  for (int i = 0; i < nsteps; ++i) {
    rk4_step(R, Rdot, dt);
    if (R <= 1e-6)
      throw std::runtime_error("integrate_background: collapse to R = 0 before T");
    out.push_back({(i + 1) * dt, R, Rdot});
  }
  return out;
}

Background::Background(double R0, double Rdot0, double dt_fine)
    : R0_(R0), Rdot0_(Rdot0), dt_fine_(dt_fine) {
  if (!(R0 > 0.0)) throw std::invalid_argument("Background: R0 must be > 0");
  cache_ = {0.0, R0, Rdot0};
}

BackgroundState Background::at(double t) const {
  if (t < 0.0) throw std::invalid_argument("Background: t must be >= 0");
  BackgroundState s = (t >= cache_.t) ? cache_ : BackgroundState{0.0, R0_, Rdot0_};
  while (s.t < t - 1e-15) {
    double h = std::min(dt_fine_, t - s.t);
    rk4_step(s.R, s.Rdot, h);
    s.t += h;
    if (s.R <= 1e-6)
      throw std::runtime_error("Background: collapse to R = 0 before requested time");
  }
  s.t = t;
  cache_ = s;
  return s;
}

SystemModel cosmo_system(const EosModel& eos, std::shared_ptr<Background> background,
                         std::shared_ptr<double> mean_drift_out) {
  SystemModel sys;
  sys.name = "cosmo";
  sys.dim = 3;
  sys.ncomp = 4;  // (sigma, V1, V2, V3)

  auto admissible = [eos](double rho) {
    double gp = eos.fprime(rho);
    if (!(gp > 0.0) || !(rho > 0.0))
      throw std::runtime_error("cosmo_system: g' <= 0 or rho_hat + sigma <= 0");
    return gp;
  };

  sys.a0 = [eos, background, admissible](const double* u, double t, double* mat) {
    const int n = 4;
    for (int i = 0; i < n * n; ++i) mat[i] = 0.0;
    double rho = background->at(t).rho_hat() + u[0];
    double gp = admissible(rho);
    mat[0] = gp / (rho * rho);
    for (int i = 1; i < n; ++i) mat[i * n + i] = 1.0;
  };

  sys.a_adv = [eos, background, admissible](const double* u, double t, int axis,
                                            double* mat) {
    const int n = 4;
    for (int i = 0; i < n * n; ++i) mat[i] = 0.0;
    BackgroundState bg = background->at(t);
    double rho = bg.rho_hat() + u[0];
    double gp = admissible(rho);
    double invR = 1.0 / bg.R;
    double vk = u[1 + axis];
    mat[0] = invR * gp / (rho * rho) * vk;
    mat[0 * n + 1 + axis] = invR * gp / rho;
    mat[(1 + axis) * n + 0] = invR * gp / rho;
    for (int i = 0; i < 3; ++i) mat[(1 + i) * n + (1 + i)] = invR * vk;
  };

  sys.b = [eos, background, admissible](const double* u, double t, double* mat) {
    const int n = 4;
    for (int i = 0; i < n * n; ++i) mat[i] = 0.0;
    BackgroundState bg = background->at(t);
    double rho = bg.rho_hat() + u[0];
    double gp = admissible(rho);
    double hubble = bg.Rdot / bg.R;
    mat[0] = 3.0 * hubble * gp / rho;
    for (int i = 1; i < n; ++i) mat[i * n + i] = hubble;
  };

  sys.source = [background, mean_drift_out](const RealField& state, double t) {
    const Grid& g = state.grid();
    BackgroundState bg = background->at(t);
    RealField src(g, 1);
    double mean = state.integral(0) / g.volume();
    if (mean_drift_out) *mean_drift_out = std::abs(state.integral(0));
    const double coef = 4.0 * std::numbers::pi * bg.R * bg.R;
    for (std::size_t i = 0; i < g.num_points(); ++i)
      src.at(0, i) = coef * (state.at(0, i) - mean);
    RealField phi = poisson_torus_zero_mean(src);
    RealField out(g, 4);
    SpectralField spec = transform(phi);
    for (int a = 0; a < 3; ++a) {
      SpectralField da = spec;
      partial_derivative_inplace(da, a);
      RealField grad = inverse_transform(da);
      for (std::size_t i = 0; i < g.num_points(); ++i)
        out.at(1 + a, i) = -grad.at(0, i);
    }
    return out;
  };
  return sys;
}

}  // namespace hyperflow
