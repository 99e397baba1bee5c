#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperflow/elliptic.hpp"
#include "hyperflow/norms.hpp"
#include "hyperflow/random_fields.hpp"
#include "hyperflow/spectral_ops.hpp"

using namespace hyperflow;

namespace {
constexpr double kPi = std::numbers::pi;

RealField laplacian(const RealField& u) {
  RealField out(u.grid(), u.ncomp());
  for (int a = 0; a < u.grid().dim; ++a)
    out += partial_derivative(partial_derivative(u, a), a);
  return out;
}
}  // namespace

TEST_CASE("torus Poisson solve inverts the Laplacian to spectral accuracy") {
  Grid g = Grid::uniform(3, 16, 2.0 * kPi);
  RealField f(g, 1);
  f.fill(0, [](double x, double y, double z) {
    return std::sin(x) * std::cos(2 * y) + std::sin(3 * z);
  });
  RealField phi = poisson_torus_zero_mean(f);
  CHECK((laplacian(phi) - f).max_abs() < 1e-10);
  CHECK(std::abs(phi.integral(0)) < 1e-10);
}

TEST_CASE("torus Poisson solve of a single harmonic has closed form") {
  Grid g = Grid::uniform(1, 32, 2.0 * kPi);
  RealField f(g, 1), expect(g, 1);
  f.fill(0, [](double x, double, double) { return std::sin(2 * x); });
  expect.fill(0, [](double x, double, double) { return -std::sin(2 * x) / 4.0; });
  CHECK((poisson_torus_zero_mean(f) - expect).max_abs() < 1e-12);
}

TEST_CASE("torus Poisson rejects data with nonzero mean") {
  Grid g = Grid::uniform(1, 32, 2.0 * kPi);
  RealField f(g, 1);
  f.fill(0, [](double x, double, double) { return 1.0 + std::sin(x); });
  CHECK_THROWS(poisson_torus_zero_mean(f));
}

TEST_CASE("free-space potential of a Gaussian matches the error-function law") {
  double L = 16.0, sigma = 0.5, mass = 3.0;
  Grid g = Grid::uniform(3, 64, L, true);
  RealField rho = gaussian_field(g, sigma, mass);
  RealField phi = poisson_free_space(rho);
  // phi(r) = -M erf(r/(sqrt 2 sigma)) / r; check well outside the core
  double worst = 0.0;
  std::array<int, 3> idx;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    g.unravel(i, idx);
    double x = g.coord(0, idx[0]), y = g.coord(1, idx[1]), z = g.coord(2, idx[2]);
    double r = std::sqrt(x * x + y * y + z * z);
    if (r < 3.0 * sigma || r > 0.4 * L) continue;
    double expect = -mass * std::erf(r / (std::sqrt(2.0) * sigma)) / r;
    worst = std::max(worst, std::abs(phi.at(0, i) - expect) / std::abs(expect));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("free-space solve satisfies Delta phi = 4 pi rho in the interior") {
  double L = 16.0;
  Grid g = Grid::uniform(3, 32, L, true);
  RealField rho = bump_field(g, 2.0, 1.0);
  RealField phi = poisson_free_space(rho);
  RealField lap = laplacian(phi);
  // compare where rho lives; boundary effects stay outside the support
  double worst = 0.0;
  std::array<int, 3> idx;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    g.unravel(i, idx);
    double x = g.coord(0, idx[0]), y = g.coord(1, idx[1]), z = g.coord(2, idx[2]);
    if (std::max({std::abs(x), std::abs(y), std::abs(z)}) > 3.0) continue;
    worst = std::max(worst,
                     std::abs(lap.at(0, i) - 4.0 * kPi * rho.at(0, i)));
  }
  CHECK(worst < 2e-2 * rho.max_abs() * 4.0 * kPi);
}

TEST_CASE("free-space solve rejects data without a vacuum guard band") {
  Grid g = Grid::uniform(3, 16, 8.0, true);
  RealField rho(g, 1);
  rho.fill(0, [](double x, double, double) { return std::cos(2 * kPi * x / 8.0); });
  CHECK_THROWS(poisson_free_space(rho));
}

TEST_CASE("gradient of the inverse Laplacian matches differentiating the potential") {
  Grid g = Grid::uniform(2, 32, 2.0 * kPi);
  RealField f(g, 1);
  f.fill(0, [](double x, double y, double) { return std::sin(x) * std::sin(y); });
  RealField grad = grad_inv_laplacian(f);
  RealField phi = poisson_torus_zero_mean(f);
  for (int a = 0; a < 2; ++a) {
    RealField da = partial_derivative(phi, a);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.num_points(); ++i)
      worst = std::max(worst, std::abs(grad.at(a, i) - da.at(0, i)));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("order-zero operator composes as d_i d_j applied to the potential") {
  Grid g = Grid::uniform(2, 32, 2.0 * kPi);
  RealField f = random_smooth_field(g, 1, 17);
  // remove the mean so the potential is well defined
  double mean = f.integral(0) / g.volume();
  for (std::size_t i = 0; i < g.num_points(); ++i) f.at(0, i) -= mean;
  // multiplier -k_i k_j/|k|^2 equals minus d_i d_j applied to the potential
  RealField expect =
      partial_derivative(partial_derivative(poisson_torus_zero_mean(f), 0), 1);
  expect *= -1.0;
  RealField got = zero_order_operator(f, 0, 1);
  CHECK((got - expect).max_abs() < 1e-11);
  // L2 bound: the multiplier has modulus <= 1
  CHECK(l2_norm(got) <= l2_norm(f) * (1.0 + 1e-12));
}
