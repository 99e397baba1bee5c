#pragma once

#include "hyperflow/fft.hpp"

namespace hyperflow {

// Bessel-potential multiplier: each mode k is scaled by (1+|k|^2)^(s/2).
RealField lambda_s(const RealField& field, double s);
void lambda_s_inplace(SpectralField& spec, double s);

// Spectral differentiation along one axis (multiplication by i*k_a).
// The unmatched Nyquist mode is zeroed to keep the result real.
RealField partial_derivative(const RealField& field, int axis);
void partial_derivative_inplace(SpectralField& spec, int axis);

// Repeated spectral differentiation given a multi-index alpha (length dim).
RealField multi_derivative(const RealField& field, const std::array<int, 3>& alpha);

// Zero all modes with |m_a| > rule * n_a/2 on any axis. rule in (0,1].
SpectralField dealias(const SpectralField& spec, double rule = 2.0 / 3.0);
void dealias_inplace(SpectralField& spec, double rule = 2.0 / 3.0);
void dealias_inplace(RealField& field, double rule = 2.0 / 3.0);

// Samples of u(eps * x) on the destination grid, by trigonometric
// interpolation of the source field. Both grids must be centered.
// Throws if the rescaled support leaks into the destination boundary band.
RealField rescale(const RealField& field, double epsilon, const Grid& dest);

// Multi-index enumeration: all alpha with |alpha| <= m in dim dimensions.
std::vector<std::array<int, 3>> multi_indices(int dim, int m);

}  // namespace hyperflow
