#include "hyperflow/small_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperflow {

void solve_linear(const double* m, const double* b, double* x, int n) {
  double a[kMaxComp * kMaxComp];
  double y[kMaxComp];
  int perm[kMaxComp];
  for (int i = 0; i < n * n; ++i) a[i] = m[i];
  for (int i = 0; i < n; ++i) {
    y[i] = b[i];
    perm[i] = i;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-14)
      throw std::runtime_error("solve_linear: singular matrix");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(y[col], y[piv]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      y[r] -= f * y[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = y[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  (void)perm;
}

void symmetric_eigenvalues(const double* m, double* lam, int n) {
  double a[kMaxComp * kMaxComp];
  for (int i = 0; i < n * n; ++i) a[i] = m[i];
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        double theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) lam[i] = a[i * n + i];
}

double max_asymmetry(const double* m, int n) {
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      r = std::max(r, std::abs(m[i * n + j] - m[j * n + i]));
  return r;
}

}  // namespace hyperflow
