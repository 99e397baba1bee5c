#pragma once

#include "hyperflow/field.hpp"

namespace hyperflow {

// Solve Delta phi = f on the torus with zero-mean data; phi_hat(0) = 0.
RealField poisson_torus_zero_mean(const RealField& f);

// Newtonian potential of a compactly supported density on a centered box:
// phi(x) = -int rho(y)/|x-y| dy, so Delta phi = 4 pi rho. Requires d = 3
// and padding: rho must vanish outside the central half of the box.
RealField poisson_free_space(const RealField& rho);

// grad(Delta^{-1} f) on the torus (zero-mean f); returns a d-component field.
RealField grad_inv_laplacian(const RealField& f);

// Order-zero multiplier -k_i k_j / |k|^2 (k = 0 mapped to 0), torus.
RealField zero_order_operator(const RealField& f, int i, int j);

}  // namespace hyperflow
