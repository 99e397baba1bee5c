#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hyperflow/system_model.hpp"

namespace hyperflow {

// Homogeneous Newtonian background: R'' + (4 pi / 3) R^{-2} = 0, with
// rho_hat = R^{-3} (mass constant C = 1).
struct BackgroundState {
  double t = 0.0;
  double R = 1.0;
  double Rdot = 0.0;

  double rho_hat() const { return 1.0 / (R * R * R); }
  // First integral E = Rdot^2/2 - (4 pi/3)/R, constant along trajectories.
  double first_integral() const;
};

std::vector<BackgroundState> integrate_background(double R0, double Rdot0,
                                                  double T, double dt);

// On-demand background evaluation by co-integrating the scale-factor ODE
// with a fine fixed step; caches the last point so that the monotone
// query pattern of an RK4 solve costs one fine sub-integration overall.
class Background {
 public:
  Background(double R0, double Rdot0, double dt_fine = 1e-3);
  BackgroundState at(double t) const;

 private:
  double R0_, Rdot0_, dt_fine_;
  mutable BackgroundState cache_;
};

// Pressure law p = f(rho_hat + sigma) - f(rho_hat); g' = f'(rho_hat + sigma)
// must stay positive on all evaluated states.
struct EosModel {
  std::function<double(double)> f = [](double rho) { return rho * rho; };
  std::function<double(double)> fprime = [](double rho) { return 2.0 * rho; };
};

// Comoving perturbation system in U = (sigma, V^1, V^2, V^3) with
// A0 = diag(g'/(rho_hat+sigma)^2, 1, 1, 1) and Poisson source
// Delta Phi = 4 pi R^2 sigma on the torus. *mean_drift_out (when given)
// receives |int sigma dx| observed at the latest source evaluation.
SystemModel cosmo_system(const EosModel& eos, std::shared_ptr<Background> background,
                         std::shared_ptr<double> mean_drift_out = nullptr);

}  // namespace hyperflow
