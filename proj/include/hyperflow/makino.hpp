#pragma once

#include <memory>

#include "hyperflow/system_model.hpp"

namespace hyperflow {

// Barotropic equation-of-state constants p = K rho^gamma and the derived
// quantities used by the Makino substitution.
struct EpmParams {
  double K = 1.0;
  double gamma = 2.0;

  EpmParams() = default;
  EpmParams(double K_, double gamma_);

  double beta() const { return 2.0 / (gamma - 1.0); }
  // c = 4 pi ((gamma-1)/(2 sqrt(K gamma)))^(2/(gamma-1)); the Poisson
  // source for w is c * w^beta = 4 pi rho.
  double c_k_gamma() const;
  // prefactor of the Makino variable: w = makino_factor * rho^((gamma-1)/2)
  double makino_factor() const;
};

// w = (2 sqrt(K gamma)/(gamma-1)) rho^((gamma-1)/2), rho >= 0.
RealField makino_from_density(const RealField& rho, const EpmParams& params);

// rho = ((gamma-1) w / (2 sqrt(K gamma)))^(2/(gamma-1)), w >= 0.
RealField density_from_makino(const RealField& w, const EpmParams& params);

enum class EpmDomain { torus, free_space };

// The Euler-Poisson-Makino system in the unknowns (w, v^1..v^d).
// The torus variant projects the Poisson source to zero mean and records
// the subtracted mean in *projected_mean_out (when provided).
SystemModel epm_system(const EpmParams& params, EpmDomain domain,
                       std::shared_ptr<double> projected_mean_out = nullptr);

}  // namespace hyperflow
