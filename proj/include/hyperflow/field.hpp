#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hyperflow/grid.hpp"

namespace hyperflow {

// N-component real function sampled on a Grid. Component-major storage.
class RealField {
 public:
  RealField() = default;
  RealField(Grid grid, int ncomp);

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  std::size_t num_points() const { return grid_.num_points(); }

  double& at(int c, std::size_t i) { return data_[c * num_points() + i]; }
  double at(int c, std::size_t i) const { return data_[c * num_points() + i]; }
  double* comp(int c) { return data_.data() + c * num_points(); }
  const double* comp(int c) const { return data_.data() + c * num_points(); }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  // Fill component c by evaluating fn at physical coordinates.
  void fill(int c, const std::function<double(double, double, double)>& fn);

  bool finite() const;
  double max_abs() const;
  double max_abs(int c) const;
  // Integral of component c by the trapezoidal (= exact periodic) rule.
  double integral(int c) const;

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(double a);
  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(double s, RealField a) { return a *= s; }

 private:
  Grid grid_;
  int ncomp_ = 0;
  std::vector<double> data_;
};

// Discrete Fourier coefficients of a RealField; same layout, complex values.
// Coefficients are Fourier-series coefficients relative to the grid origin:
// u(x) = sum_k c_k exp(i k . (x - x0)).
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(Grid grid, int ncomp);

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  std::size_t num_points() const { return grid_.num_points(); }

  std::complex<double>& at(int c, std::size_t i) { return data_[c * num_points() + i]; }
  const std::complex<double>& at(int c, std::size_t i) const {
    return data_[c * num_points() + i];
  }
  std::complex<double>* comp(int c) { return data_.data() + c * num_points(); }
  const std::complex<double>* comp(int c) const { return data_.data() + c * num_points(); }

 private:
  Grid grid_;
  int ncomp_ = 0;
  std::vector<std::complex<double>> data_;
};

}  // namespace hyperflow
