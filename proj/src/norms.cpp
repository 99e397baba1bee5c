#include "hyperflow/norms.hpp"

#include <cmath>

namespace hyperflow {

namespace {

double radius(const Grid& g, std::size_t i) {
  std::array<int, 3> ix{};
  g.unravel(i, ix);
  double r2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    double x = g.coord(a, ix[a]);
    r2 += x * x;
  }
  return std::sqrt(r2);
}

// Field must vanish on the outermost cells so the weight is meaningful.
void check_support_clear_of_boundary(const RealField& field, const char* who) {
  const Grid& g = field.grid();
  double global = field.max_abs();
  if (global == 0.0) return;
  double band = 0.0;
  std::array<int, 3> ix{};
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    g.unravel(i, ix);
    bool on_band = false;
    for (int a = 0; a < g.dim; ++a)
      if (ix[a] < 2 || ix[a] >= g.n[a] - 2) on_band = true;
    if (!on_band) continue;
    for (int c = 0; c < field.ncomp(); ++c) band = std::max(band, std::abs(field.at(c, i)));
  }
  if (band > 1e-8 * global)
    throw std::runtime_error(std::string(who) + ": support touches the box boundary");
}

// smooth step: 0 for t<=0, 1 for t>=1
double smoothstep(double t) {
  auto h = [](double x) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); };
  double a = h(t), b = h(1.0 - t);
  return a / (a + b);
}

}  // namespace

double hs_norm(const SpectralField& spec, double s) {
  const Grid& g = spec.grid();
  const std::size_t np = g.num_points();
  std::array<int, 3> ix{};
  double sum = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    g.unravel(i, ix);
    double k2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      double k = g.wavenumber(a, ix[a]);
      k2 += k * k;
    }
    double w = std::pow(1.0 + k2, s);
    for (int c = 0; c < spec.ncomp(); ++c) sum += w * std::norm(spec.at(c, i));
  }
  return std::sqrt(sum * g.volume());
}

double hs_norm(const RealField& field, double s) { return hs_norm(transform(field), s); }

double hs_inner(const RealField& u, const RealField& v, double s) {
  if (!(u.grid() == v.grid()) || u.ncomp() != v.ncomp())
    throw std::invalid_argument("hs_inner: grid/component mismatch");
  SpectralField su = transform(u), sv = transform(v);
  const Grid& g = u.grid();
  std::array<int, 3> ix{};
  double sum = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    g.unravel(i, ix);
    double k2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      double k = g.wavenumber(a, ix[a]);
      k2 += k * k;
    }
    double w = std::pow(1.0 + k2, s);
    for (int c = 0; c < u.ncomp(); ++c)
      sum += w * (std::conj(su.at(c, i)) * sv.at(c, i)).real();
  }
  return sum * g.volume();
}

double l2_norm(const RealField& field) {
  double sum = 0.0;
  for (double v : field.data()) sum += v * v;
  return std::sqrt(sum * field.grid().cell_volume());
}

double l2_delta_norm(const RealField& field, double delta) {
  const Grid& g = field.grid();
  if (!g.centered) throw std::invalid_argument("l2_delta_norm: grid must be centered");
  check_support_clear_of_boundary(field, "l2_delta_norm");
  double sum = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    double w = std::pow(1.0 + radius(g, i), 2.0 * delta);
    for (int c = 0; c < field.ncomp(); ++c) {
      double v = field.at(c, i);
      sum += w * v * v;
    }
  }
  return std::sqrt(sum * g.cell_volume());
}

double DyadicPartition::eval(int j, double r) const {
  if (j == 0) {
    // 1 on r<=1, down-transition on [1,2]
    return 1.0 - smoothstep(r - 1.0);
  }
  double lo = std::ldexp(1.0, j - 2);   // 2^(j-2)
  double mid = std::ldexp(1.0, j - 1);  // 2^(j-1)
  double hi = std::ldexp(1.0, j);       // 2^j
  double top = std::ldexp(1.0, j + 1);  // 2^(j+1)
  double up = smoothstep((r - lo) / (mid - lo));
  double down = 1.0 - smoothstep((r - hi) / (top - hi));
  return up * down;
}

double weighted_norm(const RealField& field, const NormSpec& spec,
                     const DyadicPartition& partition) {
  const Grid& g = field.grid();
  if (!g.centered) throw std::invalid_argument("weighted_norm: grid must be centered");
  check_support_clear_of_boundary(field, "weighted_norm");
  const int d = g.dim;
  const int jmax = spec.j_max;

  // The field must be negligible beyond radius 2^(jmax-1), so that the
  // cutoffs with j > jmax never see it.
  double global = field.max_abs();
  if (global > 0.0) {
    double limit = std::ldexp(1.0, jmax - 1);
    double outside = 0.0;
    for (std::size_t i = 0; i < g.num_points(); ++i) {
      if (radius(g, i) <= limit) continue;
      for (int c = 0; c < field.ncomp(); ++c)
        outside = std::max(outside, std::abs(field.at(c, i)));
    }
    if (outside > 1e-10 * global)
      throw std::runtime_error("weighted_norm: support exceeds 2^(j_max - 1)");
  }

  Grid dest = Grid::uniform(d, partition.box_points(d), 8.0, true);

  double sum = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    RealField piece(g, field.ncomp());
    double piece_max = 0.0;
    for (std::size_t i = 0; i < g.num_points(); ++i) {
      double psi = partition.eval(j, radius(g, i));
      if (psi == 0.0) continue;
      for (int c = 0; c < field.ncomp(); ++c) {
        piece.at(c, i) = psi * field.at(c, i);
        piece_max = std::max(piece_max, std::abs(piece.at(c, i)));
      }
    }
    if (piece_max <= 1e-300) continue;
    RealField scaled = rescale(piece, std::ldexp(1.0, j), dest);
    double term = hs_norm(scaled, spec.s);
    sum += std::pow(2.0, (spec.delta + 0.5 * d) * 2.0 * j) * term * term;
  }
  return std::sqrt(sum);
}

double weighted_norm_direct(const RealField& field, int m, double delta) {
  if (m < 0) throw std::invalid_argument("weighted_norm_direct: m must be >= 0");
  const Grid& g = field.grid();
  if (!g.centered)
    throw std::invalid_argument("weighted_norm_direct: grid must be centered");
  check_support_clear_of_boundary(field, "weighted_norm_direct");
  std::vector<double> base(g.num_points());
  for (std::size_t i = 0; i < g.num_points(); ++i) base[i] = 1.0 + radius(g, i);
  double sum = 0.0;
  for (const auto& alpha : multi_indices(g.dim, m)) {
    // each derivative order gains one power of the weight, matching the
    // 2^(j|alpha|) factor the dyadic rescaling produces
    int order = alpha[0] + alpha[1] + alpha[2];
    RealField der = multi_derivative(field, alpha);
    for (std::size_t i = 0; i < g.num_points(); ++i) {
      double w = std::pow(base[i], 2.0 * (delta + order));
      for (int c = 0; c < der.ncomp(); ++c) {
        double v = der.at(c, i);
        sum += w * v * v;
      }
    }
  }
  return std::sqrt(sum * g.cell_volume());
}

}  // namespace hyperflow
