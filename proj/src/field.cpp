#include "hyperflow/field.hpp"

#include <cmath>

namespace hyperflow {

RealField::RealField(Grid grid, int ncomp)
    : grid_(grid), ncomp_(ncomp), data_(grid.num_points() * ncomp, 0.0) {
  if (ncomp < 1) throw std::invalid_argument("RealField: ncomp must be >= 1");
}

void RealField::fill(int c, const std::function<double(double, double, double)>& fn) {
  const std::size_t np = num_points();
  std::array<int, 3> ix{};
  for (std::size_t i = 0; i < np; ++i) {
    grid_.unravel(i, ix);
    double x = grid_.coord(0, ix[0]);
    double y = grid_.dim > 1 ? grid_.coord(1, ix[1]) : 0.0;
    double z = grid_.dim > 2 ? grid_.coord(2, ix[2]) : 0.0;
    at(c, i) = fn(x, y, z);
  }
}

bool RealField::finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double RealField::max_abs(int c) const {
  double m = 0.0;
  const double* p = comp(c);
  for (std::size_t i = 0; i < num_points(); ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

double RealField::integral(int c) const {
  double s = 0.0;
  const double* p = comp(c);
  for (std::size_t i = 0; i < num_points(); ++i) s += p[i];
  return s * grid_.cell_volume();
}

RealField& RealField::operator+=(const RealField& o) {
  if (!(grid_ == o.grid_) || ncomp_ != o.ncomp_)
    throw std::invalid_argument("RealField: grid/component mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  if (!(grid_ == o.grid_) || ncomp_ != o.ncomp_)
    throw std::invalid_argument("RealField: grid/component mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

RealField& RealField::operator*=(double a) {
  for (double& v : data_) v *= a;
  return *this;
}

SpectralField::SpectralField(Grid grid, int ncomp)
    : grid_(grid), ncomp_(ncomp), data_(grid.num_points() * ncomp) {
  if (ncomp < 1) throw std::invalid_argument("SpectralField: ncomp must be >= 1");
}

}  // namespace hyperflow
