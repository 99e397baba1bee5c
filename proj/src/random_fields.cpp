#include "hyperflow/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hyperflow/spectral_ops.hpp"

namespace hyperflow {

RealField random_smooth_field(const Grid& grid, int ncomp, std::uint64_t seed,
                              double cutoff_frac) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealField f(grid, ncomp);
  for (double& v : f.data()) v = gauss(rng);
  SpectralField spec = transform(f);
  dealias_inplace(spec, cutoff_frac);
  f = inverse_transform(spec);
  double m = f.max_abs();
  if (m > 0.0) f *= 1.0 / m;
  return f;
}

RealField bump_field(const Grid& grid, double radius, double amplitude) {
  RealField f(grid, 1);
  const double r2max = radius * radius;
  f.fill(0, [&](double x, double y, double z) {
    double r2 = (x * x + y * y + z * z) / r2max;
    if (r2 >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - r2));
  });
  return f;
}

RealField random_bump_field(const Grid& grid, double radius, std::uint64_t seed,
                            double depth) {
  RealField envelope = bump_field(grid, radius);
  RealField noise = random_smooth_field(grid, 1, seed);
  for (std::size_t i = 0; i < grid.num_points(); ++i)
    envelope.at(0, i) *= 1.0 + depth * noise.at(0, i);
  return envelope;
}

RealField gaussian_field(const Grid& grid, double sigma, double mass) {
  RealField f(grid, 1);
  double norm = mass / std::pow(2.0 * std::numbers::pi * sigma * sigma,
                                0.5 * grid.dim);
  f.fill(0, [&](double x, double y, double z) {
    double r2 = x * x + y * y + z * z;
    return norm * std::exp(-0.5 * r2 / (sigma * sigma));
  });
  return f;
}

}  // namespace hyperflow
