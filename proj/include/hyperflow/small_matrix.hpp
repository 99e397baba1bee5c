#pragma once

#include <array>

namespace hyperflow {

// Dense helpers for the per-node N x N systems, N <= 4. Row-major storage.
inline constexpr int kMaxComp = 4;

// Solve M x = b by partial-pivot LU. Throws on singular M.
void solve_linear(const double* m, const double* b, double* x, int n);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
void symmetric_eigenvalues(const double* m, double* lam, int n);

// max_ij |m[i][j] - m[j][i]|
double max_asymmetry(const double* m, int n);

}  // namespace hyperflow
