#pragma once

#include "hyperflow/spectral_ops.hpp"

namespace hyperflow {

// ||u||_{H^s} = ||Lambda^s u||_{L^2}, evaluated on the coefficient side.
double hs_norm(const RealField& field, double s);
double hs_norm(const SpectralField& spec, double s);

// <u,v>_s = <Lambda^s u, Lambda^s v>_{L^2}.
double hs_inner(const RealField& u, const RealField& v, double s);

double l2_norm(const RealField& field);

// ||(1+|x|)^delta u||_{L^2}; requires a centered grid and support away
// from the box boundary.
double l2_delta_norm(const RealField& field, double delta);

// Radial dyadic cutoff family: psi_0 = 1 on {r<=1}, supported in {r<=2};
// psi_j (j>=1) = 1 on the annulus {2^(j-1)<=r<=2^j}, supported in
// {2^(j-2)<=r<=2^(j+1)}, with |d^a psi_j| <~ C_a 2^(-a j).
struct DyadicPartition {
  int j_max = 6;
  // Resolution of the fixed evaluation box [-4,4]^d per axis.
  int box_points_1d = 256;
  int box_points_2d = 128;
  int box_points_3d = 32;

  double eval(int j, double r) const;
  int box_points(int dim) const {
    return dim == 1 ? box_points_1d : (dim == 2 ? box_points_2d : box_points_3d);
  }
};

struct NormSpec {
  double s = 0.0;
  double delta = 0.0;
  int j_max = 6;
};

// Dyadic weighted norm: ||u||^2 = sum_j 2^((delta+d/2)2j) ||(psi_j u)_{2^j}||^2_{H^s}.
// Each localized piece is rescaled onto the fixed box [-4,4]^d.
double weighted_norm(const RealField& field, const NormSpec& spec,
                     const DyadicPartition& partition);

// Integer-order direct form: sum_{|a|<=m} int (1+|x|)^{2(delta+|a|)} |d^a u|^2 dx.
double weighted_norm_direct(const RealField& field, int m, double delta);

}  // namespace hyperflow
