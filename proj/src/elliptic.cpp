#include "hyperflow/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "hyperflow/norms.hpp"
#include "hyperflow/spectral_ops.hpp"

namespace hyperflow {

namespace {

double mode_k2(const Grid& g, const std::array<int, 3>& ix) {
  double k2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    double k = g.wavenumber(a, ix[a]);
    k2 += k * k;
  }
  return k2;
}

void require_zero_mean(const RealField& f, const char* who) {
  double l2 = l2_norm(f);
  double mean = std::abs(f.integral(0)) / f.grid().volume();
  if (l2 > 0.0 && mean > 1e-10 * l2)
    throw std::invalid_argument(std::string(who) + ": input must have zero mean");
}

}  // namespace

RealField poisson_torus_zero_mean(const RealField& f) {
  if (f.ncomp() != 1) throw std::invalid_argument("poisson_torus: scalar input expected");
  require_zero_mean(f, "poisson_torus_zero_mean");
  SpectralField spec = transform(f);
  const Grid& g = f.grid();
  std::array<int, 3> ix{};
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    g.unravel(i, ix);
    double k2 = mode_k2(g, ix);
    spec.at(0, i) = k2 > 0.0 ? -spec.at(0, i) / k2 : 0.0;
  }
  return inverse_transform(spec);
}

RealField poisson_free_space(const RealField& rho) {
  const Grid& g = rho.grid();
  if (g.dim != 3 || rho.ncomp() != 1)
    throw std::invalid_argument("poisson_free_space: expects a 3-D scalar density");
  if (!g.centered)
    throw std::invalid_argument("poisson_free_space: grid must be centered");

  // Guard band: the density must vanish outside the central half of the box.
  double global = rho.max_abs();
  if (global > 0.0) {
    double guard = 0.0;
    std::array<int, 3> ix{};
    for (std::size_t i = 0; i < g.num_points(); ++i) {
      g.unravel(i, ix);
      bool outside = false;
      for (int a = 0; a < 3; ++a)
        if (std::abs(g.coord(a, ix[a])) > 0.25 * g.box[a]) outside = true;
      if (outside) guard = std::max(guard, std::abs(rho.at(0, i)));
    }
    // loose enough to tolerate dealiasing ripples on evolved compact data
    if (guard > 1e-5 * global)
      throw std::runtime_error("poisson_free_space: insufficient padding around the support");
  }

  // Zero-padded doubled box; convolution with the truncated -1/|x| kernel
  // done via its closed-form transform 4 pi (1 - cos(R|k|))/|k|^2.
  Grid pad(3, {2 * g.n[0], 2 * g.n[1], 2 * g.n[2]},
           {2.0 * g.box[0], 2.0 * g.box[1], 2.0 * g.box[2]}, true);
  RealField rho_pad(pad, 1);
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2) {
        std::size_t src = (static_cast<std::size_t>(i0) * g.n[1] + i1) * g.n[2] + i2;
        std::size_t dst = (static_cast<std::size_t>(i0 + g.n[0] / 2) * pad.n[1] +
                           (i1 + g.n[1] / 2)) * pad.n[2] + (i2 + g.n[2] / 2);
        rho_pad.at(0, dst) = rho.at(0, src);
      }

  // Truncation radius covers every source-to-target distance for targets
  // with |x|_inf <= 0.45 L; beyond that the periodic images of the
  // truncated kernel start to contaminate the corners of the box.
  double L = std::max({g.box[0], g.box[1], g.box[2]});
  double R = 0.75 * std::sqrt(3.0) * L;

  SpectralField spec = transform(rho_pad);
  std::array<int, 3> ix{};
  for (std::size_t i = 0; i < pad.num_points(); ++i) {
    pad.unravel(i, ix);
    double k2 = mode_k2(pad, ix);
    double khat;
    if (k2 > 0.0) {
      double k = std::sqrt(k2);
      khat = 4.0 * std::numbers::pi * (1.0 - std::cos(R * k)) / k2;
    } else {
      khat = 2.0 * std::numbers::pi * R * R;
    }
    spec.at(0, i) *= -khat;
  }
  RealField phi_pad = inverse_transform(spec);

  RealField phi(g, 1);
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2) {
        std::size_t dst = (static_cast<std::size_t>(i0) * g.n[1] + i1) * g.n[2] + i2;
        std::size_t src = (static_cast<std::size_t>(i0 + g.n[0] / 2) * pad.n[1] +
                           (i1 + g.n[1] / 2)) * pad.n[2] + (i2 + g.n[2] / 2);
        phi.at(0, dst) = phi_pad.at(0, src);
      }
  return phi;
}

RealField grad_inv_laplacian(const RealField& f) {
  if (f.ncomp() != 1)
    throw std::invalid_argument("grad_inv_laplacian: scalar input expected");
  require_zero_mean(f, "grad_inv_laplacian");
  const Grid& g = f.grid();
  SpectralField spec = transform(f);
  SpectralField out(g, g.dim);
  std::array<int, 3> ix{};
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    g.unravel(i, ix);
    double k2 = mode_k2(g, ix);
    for (int a = 0; a < g.dim; ++a) {
      if (k2 > 0.0) {
        double ka = g.wavenumber(a, ix[a]);
        out.at(a, i) = std::complex<double>(0.0, -ka / k2) * spec.at(0, i);
      } else {
        out.at(a, i) = 0.0;
      }
    }
  }
  return inverse_transform(out);
}

RealField zero_order_operator(const RealField& f, int i, int j) {
  if (f.ncomp() != 1)
    throw std::invalid_argument("zero_order_operator: scalar input expected");
  const Grid& g = f.grid();
  if (i < 0 || i >= g.dim || j < 0 || j >= g.dim)
    throw std::invalid_argument("zero_order_operator: axis out of range");
  require_zero_mean(f, "zero_order_operator");
  SpectralField spec = transform(f);
  std::array<int, 3> ix{};
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    g.unravel(p, ix);
    double k2 = mode_k2(g, ix);
    if (k2 > 0.0) {
      double ki = g.wavenumber(i, ix[i]);
      double kj = g.wavenumber(j, ix[j]);
      spec.at(0, p) *= -ki * kj / k2;
    } else {
      spec.at(0, p) = 0.0;
    }
  }
  return inverse_transform(spec);
}

}  // namespace hyperflow
