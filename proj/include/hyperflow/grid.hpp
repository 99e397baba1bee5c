#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace hyperflow {

// Uniform periodic collocation lattice in d = 1..3 dimensions.
// Coordinates run over [x0, x0 + L) per axis; centered grids put the
// origin at the box midpoint (x0 = -L/2), which is what the weighted
// norms and free-space solves expect.
struct Grid {
  int dim = 1;
  std::array<int, 3> n{1, 1, 1};          // points per axis, power of two
  std::array<double, 3> box{1.0, 1.0, 1.0};  // physical box length per axis
  bool centered = false;

  Grid() = default;
  Grid(int dim_, std::array<int, 3> n_, std::array<double, 3> box_,
       bool centered_ = false);

  static Grid uniform(int dim, int points, double length, bool centered = false);

  std::size_t num_points() const {
    std::size_t p = 1;
    for (int a = 0; a < dim; ++a) p *= static_cast<std::size_t>(n[a]);
    return p;
  }
  double spacing(int axis) const { return box[axis] / n[axis]; }
  double origin(int axis) const { return centered ? -0.5 * box[axis] : 0.0; }
  double coord(int axis, int i) const { return origin(axis) + i * spacing(axis); }
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing(a);
    return v;
  }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= box[a];
    return v;
  }
  // Signed integer mode index in [-n/2, n/2) for storage index i.
  int mode(int axis, int i) const { return (i <= n[axis] / 2 - 1) ? i : i - n[axis]; }
  // Physical wavenumber 2*pi*m / L.
  double wavenumber(int axis, int i) const;
  double min_spacing() const;

  // Decompose a flat row-major index into per-axis indices.
  void unravel(std::size_t idx, std::array<int, 3>& out) const;

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && box == o.box && centered == o.centered;
  }
};

}  // namespace hyperflow
