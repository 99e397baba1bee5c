#include "hyperflow/makino.hpp"

#include <cmath>
#include <numbers>

#include "hyperflow/elliptic.hpp"
#include "hyperflow/spectral_ops.hpp"

namespace hyperflow {

EpmParams::EpmParams(double K_, double gamma_) : K(K_), gamma(gamma_) {
  if (!(K > 0.0)) throw std::invalid_argument("EpmParams: K must be positive");
  if (!(gamma > 1.0 && gamma <= 3.0))
    throw std::invalid_argument("EpmParams: gamma must be in (1, 3]");
}

double EpmParams::makino_factor() const {
  return 2.0 * std::sqrt(K * gamma) / (gamma - 1.0);
}

double EpmParams::c_k_gamma() const {
  return 4.0 * std::numbers::pi * std::pow(1.0 / makino_factor(), beta());
}

RealField makino_from_density(const RealField& rho, const EpmParams& params) {
  if (rho.ncomp() != 1)
    throw std::invalid_argument("makino_from_density: scalar density expected");
  RealField w(rho.grid(), 1);
  const double f = params.makino_factor();
  const double p = 0.5 * (params.gamma - 1.0);
  for (std::size_t i = 0; i < rho.num_points(); ++i) {
    double r = rho.at(0, i);
    if (r < 0.0) throw std::invalid_argument("makino_from_density: negative density");
    w.at(0, i) = f * std::pow(r, p);
  }
  return w;
}

RealField density_from_makino(const RealField& w, const EpmParams& params) {
  if (w.ncomp() != 1)
    throw std::invalid_argument("density_from_makino: scalar input expected");
  RealField rho(w.grid(), 1);
  const double f = params.makino_factor();
  for (std::size_t i = 0; i < w.num_points(); ++i) {
    double v = w.at(0, i);
    if (v < 0.0) throw std::invalid_argument("density_from_makino: negative w");
    rho.at(0, i) = std::pow(v / f, params.beta());
  }
  return rho;
}

SystemModel epm_system(const EpmParams& params, EpmDomain domain,
                       std::shared_ptr<double> projected_mean_out) {
  SystemModel sys;
  sys.name = domain == EpmDomain::torus ? "epm_torus" : "epm_compact";
  sys.dim = 3;
  sys.ncomp = 4;  // (w, v1, v2, v3)
  sys.vanishing_at_zero = true;

  const double half_gm1 = 0.5 * (params.gamma - 1.0);
  sys.a_adv = [half_gm1](const double* u, double /*t*/, int axis, double* mat) {
    const int n = 4;
    for (int i = 0; i < n * n; ++i) mat[i] = 0.0;
    double w = u[0];
    double vk = u[1 + axis];
    mat[0] = vk;
    mat[0 * n + 1 + axis] = half_gm1 * w;
    mat[(1 + axis) * n + 0] = half_gm1 * w;
    for (int i = 0; i < 3; ++i) mat[(1 + i) * n + (1 + i)] = vk;
  };

  const double c = params.c_k_gamma();
  const double beta = params.beta();
  sys.source = [c, beta, domain, projected_mean_out](const RealField& state,
                                                     double /*t*/) {
    const Grid& g = state.grid();
    RealField src(g, 1);
    for (std::size_t i = 0; i < g.num_points(); ++i) {
      double w = std::max(state.at(0, i), 0.0);
      src.at(0, i) = c * std::pow(w, beta);
    }
    RealField phi(g, 1);
    if (domain == EpmDomain::torus) {
      double mean = src.integral(0) / g.volume();
      for (std::size_t i = 0; i < g.num_points(); ++i) src.at(0, i) -= mean;
      if (projected_mean_out) *projected_mean_out = mean;
      phi = poisson_torus_zero_mean(src);
    } else {
      // free-space solver expects Delta phi = 4 pi rho
      src *= 1.0 / (4.0 * std::numbers::pi);
      phi = poisson_free_space(src);
    }
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
