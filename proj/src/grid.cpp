#include "hyperflow/grid.hpp"

#include <cmath>
#include <numbers>

namespace hyperflow {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int dim_, std::array<int, 3> n_, std::array<double, 3> box_,
           bool centered_)
    : dim(dim_), n(n_), box(box_), centered(centered_) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1..3");
  for (int a = 0; a < dim; ++a) {
    if (!is_pow2(n[a]) || n[a] < 8)
      throw std::invalid_argument("Grid: points per axis must be a power of two >= 8");
    if (!(box[a] > 0.0)) throw std::invalid_argument("Grid: box length must be positive");
  }
}

Grid Grid::uniform(int dim, int points, double length, bool centered) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1..3");
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> box{1.0, 1.0, 1.0};
  for (int a = 0; a < dim; ++a) {
    n[a] = points;
    box[a] = length;
  }
  return Grid(dim, n, box, centered);
}

double Grid::wavenumber(int axis, int i) const {
  return 2.0 * std::numbers::pi * mode(axis, i) / box[axis];
}

double Grid::min_spacing() const {
  double h = spacing(0);
  for (int a = 1; a < dim; ++a) h = std::min(h, spacing(a));
  return h;
}

void Grid::unravel(std::size_t idx, std::array<int, 3>& out) const {
  out = {0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    out[a] = static_cast<int>(idx % n[a]);
    idx /= n[a];
  }
}

}  // namespace hyperflow
