#pragma once

#include <cstdint>

#include "hyperflow/field.hpp"

namespace hyperflow {

// Seeded low-pass-filtered Gaussian noise: iid N(0,1) samples per node,
// modes with any |m_a| > cutoff_frac * n_a/2 removed, then normalized to
// unit L-infinity amplitude. Deterministic for a fixed (grid, seed).
RealField random_smooth_field(const Grid& grid, int ncomp, std::uint64_t seed,
                              double cutoff_frac = 0.25);

// Compactly supported C^inf bump exp(-1/(1-(r/radius)^2)) scaled to
// amplitude at r=0, centered at the grid origin. Zero outside r < radius.
RealField bump_field(const Grid& grid, double radius, double amplitude = 1.0);

// Bump modulated by smooth noise: bump envelope times (1 + depth*noise).
RealField random_bump_field(const Grid& grid, double radius, std::uint64_t seed,
                            double depth = 0.5);

// Isotropic Gaussian of total mass `mass` and width sigma.
RealField gaussian_field(const Grid& grid, double sigma, double mass);

}  // namespace hyperflow
