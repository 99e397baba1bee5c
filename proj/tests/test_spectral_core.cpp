#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperflow/norms.hpp"
#include "hyperflow/random_fields.hpp"
#include "hyperflow/spectral_ops.hpp"

using namespace hyperflow;

namespace {
constexpr double kPi = std::numbers::pi;

double max_diff(const RealField& a, const RealField& b) {
  return (a - b).max_abs();
}
}  // namespace

TEST_CASE("grid mode indexing and wavenumbers") {
  Grid g = Grid::uniform(1, 8, 2.0 * kPi);
  CHECK(g.mode(0, 0) == 0);
  CHECK(g.mode(0, 3) == 3);
  CHECK(g.mode(0, 4) == -4);
  CHECK(g.mode(0, 7) == -1);
  CHECK(g.wavenumber(0, 1) == doctest::Approx(1.0));
  CHECK(g.wavenumber(0, 7) == doctest::Approx(-1.0));

  Grid gl = Grid::uniform(1, 16, 4.0);
  CHECK(gl.wavenumber(0, 1) == doctest::Approx(2.0 * kPi / 4.0));

  CHECK_THROWS(Grid::uniform(1, 12, 1.0));  // not a power of two
  CHECK_THROWS(Grid::uniform(1, 4, 1.0));   // too few points
  CHECK_THROWS(Grid::uniform(4, 16, 1.0));  // bad dimension
}

TEST_CASE("transform round trip is exact to near machine precision") {
  for (int d = 1; d <= 3; ++d) {
    Grid g = Grid::uniform(d, d == 3 ? 16 : 32, 2.0 * kPi);
    RealField u = random_smooth_field(g, 2, 42 + d, 0.8);
    RealField back = inverse_transform(transform(u));
    CHECK(max_diff(u, back) < 1e-12);
  }
}

TEST_CASE("transform of sin picks out the two expected coefficients") {
  Grid g = Grid::uniform(1, 32, 2.0 * kPi);
  RealField u(g, 1);
  u.fill(0, [](double x, double, double) { return std::sin(x); });
  SpectralField c = transform(u);
  // sin x = -(i/2) e^{ix} + (i/2) e^{-ix}
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    int m = g.mode(0, static_cast<int>(i));
    std::complex<double> expect(0.0, m == 1 ? -0.5 : (m == -1 ? 0.5 : 0.0));
    CHECK(std::abs(c.at(0, i) - expect) < 1e-13);
  }
}

TEST_CASE("spectral derivative of sin is cos, exactly") {
  Grid g = Grid::uniform(1, 64, 2.0 * kPi);
  RealField u(g, 1), expect(g, 1);
  u.fill(0, [](double x, double, double) { return std::sin(x); });
  expect.fill(0, [](double x, double, double) { return std::cos(x); });
  CHECK(max_diff(partial_derivative(u, 0), expect) < 1e-12);
}

TEST_CASE("derivative on a non-2pi box uses physical wavenumbers") {
  double L = 5.0;
  Grid g = Grid::uniform(1, 64, L);
  RealField u(g, 1), expect(g, 1);
  u.fill(0, [L](double x, double, double) { return std::sin(2 * kPi * x / L); });
  expect.fill(0, [L](double x, double, double) {
    return (2 * kPi / L) * std::cos(2 * kPi * x / L);
  });
  CHECK(max_diff(partial_derivative(u, 0), expect) < 1e-12);
}

TEST_CASE("lambda multiplier: s = 0 is the identity, single modes scale") {
  Grid g = Grid::uniform(1, 32, 2.0 * kPi);
  RealField u = random_smooth_field(g, 1, 7);
  CHECK(max_diff(lambda_s(u, 0.0), u) < 1e-12);

  RealField mode(g, 1), expect(g, 1);
  mode.fill(0, [](double x, double, double) { return std::cos(3.0 * x); });
  double factor = std::pow(1.0 + 9.0, 1.25);
  expect.fill(0, [factor](double x, double, double) {
    return factor * std::cos(3.0 * x);
  });
  CHECK(max_diff(lambda_s(mode, 2.5), expect) < 1e-11);
  // inverse smoothing undoes it
  CHECK(max_diff(lambda_s(lambda_s(mode, 2.5), -2.5), mode) < 1e-12);
}

TEST_CASE("dealias removes exactly the modes above the cutoff") {
  Grid g = Grid::uniform(1, 32, 2.0 * kPi);
  RealField u(g, 1);
  u.fill(0, [](double x, double, double) {
    return std::cos(3.0 * x) + std::cos(14.0 * x);
  });
  RealField low(g, 1);
  low.fill(0, [](double x, double, double) { return std::cos(3.0 * x); });
  RealField v = u;
  dealias_inplace(v, 2.0 / 3.0);  // cutoff 10.67: keeps 3, removes 14
  CHECK(max_diff(v, low) < 1e-12);

  RealField w = u;
  dealias_inplace(w, 1.0);  // rule 1 keeps everything
  CHECK(max_diff(w, u) < 1e-12);
}

TEST_CASE("rescale samples the contracted function on the destination grid") {
  Grid src = Grid::uniform(1, 256, 16.0, true);
  RealField u = bump_field(src, 2.0, 1.0);
  Grid dest = Grid::uniform(1, 128, 16.0, true);
  RealField v = rescale(u, 0.5, dest);  // u(x/2): support doubles to r < 4
  double max_err = 0.0;
  for (std::size_t i = 0; i < dest.num_points(); ++i) {
    double x = 0.5 * dest.coord(0, static_cast<int>(i));
    double r2 = (x / 2.0) * (x / 2.0);
    double expect = r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
    max_err = std::max(max_err, std::abs(v.at(0, i) - expect));
  }
  CHECK(max_err < 1e-6);
}

TEST_CASE("rescale rejects supports that escape the destination box") {
  Grid src = Grid::uniform(1, 256, 16.0, true);
  RealField u = bump_field(src, 2.0, 1.0);
  Grid dest = Grid::uniform(1, 128, 16.0, true);
  // u(x/8) has support r < 16, spilling out of [-8, 8)
  CHECK_THROWS(rescale(u, 1.0 / 8.0, dest));
}

TEST_CASE("multi-index enumeration counts binomial(d+m, m)") {
  CHECK(multi_indices(1, 3).size() == 4);
  CHECK(multi_indices(2, 2).size() == 6);
  CHECK(multi_indices(3, 3).size() == 20);
  for (const auto& a : multi_indices(3, 2)) CHECK(a[0] + a[1] + a[2] <= 2);
}

TEST_CASE("mixed multi-derivative matches the analytic derivative") {
  Grid g = Grid::uniform(2, 32, 2.0 * kPi);
  RealField u(g, 1), expect(g, 1);
  u.fill(0, [](double x, double y, double) { return std::sin(x) * std::cos(2 * y); });
  // d_x d_y^2 (sin x cos 2y) = -4 cos x cos 2y
  expect.fill(0, [](double x, double y, double) {
    return -4.0 * std::cos(x) * std::cos(2 * y);
  });
  CHECK(max_diff(multi_derivative(u, {1, 2, 0}), expect) < 1e-11);
}
