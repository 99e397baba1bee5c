#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hyperflow/field.hpp"
#include "hyperflow/norms.hpp"

namespace hyperflow {

// Commutator ratio ||P(fg) - f P(g)||_L2 / (||Df||_inf ||g||_{H^{s-1}}
// + ||f||_{H^s} ||g||_inf) with P = Lambda^{s-1} d_a (order s).
double kato_ponce_ratio(double s, const RealField& f, const RealField& g,
                        int axis = 0);

struct WeightedIndices {
  double delta;
  double delta1;
  double delta2;
  NormSpec base;  // carries j_max; s is taken from the call
  DyadicPartition partition;
};

// ||uv||_{H^s} / (||u||_{H^{s1}} ||v||_{H^{s2}}); weighted variant uses
// H_{s,delta} norms. Throws naming the violated index constraint.
double multiplication_ratio(const RealField& u, const RealField& v, double s,
                            double s1, double s2,
                            const std::optional<WeightedIndices>& weighted = {});

struct PowerEstimateOptions {
  std::optional<double> delta;          // weighted variant when set
  bool nonlinear_variant = false;       // ratio ||u^(b-1)||_{H_{s-1,d+1}} / ||u||^{b-1}
  int j_max = 6;
  DyadicPartition partition;
};

// ||u^beta||_{H^s} / ||u||_{H^s} for u >= 0, 0 < s < beta + 1/2.
double power_estimate_ratio(const RealField& u, double beta, double s,
                            const PowerEstimateOptions& opts = {});

// ||F(u)-F(v)||_{H^s} / ((1 + ||u||_{H^s} + ||v||_{H^s}) ||u-v||_{H^s}).
double difference_estimate_ratio(const std::function<double(double)>& F,
                                 const RealField& u, const RealField& v, double s);

struct EnergyMarginInput {
  std::vector<double> times;
  std::vector<double> u_sq;       // ||U(t)||^2 in the estimate norm
  std::vector<double> f_sq;       // ||F(t)||^2 in the estimate norm
  std::vector<double> coeff_sum;  // sum_a ||A^a(t)||_{H^s}
  // A0 != Id variant when non-empty:
  std::vector<double> a0_norm;    // ||A0(t)||_{H^s}
  std::vector<double> dt_a0_inf;  // ||d_t A0(t)||_inf
};

struct EnergyMarginResult {
  double c_min = 0.0;
  bool feasible = false;
  std::vector<double> margin;  // rhs - lhs at c_min, per recorded time
};

// Smallest C >= 0 such that u_sq(t) <= exp(int a(tau;C)) (u_sq(0) + int f_sq)
// for all recorded t; a = C*coeff_sum, or for the A0 variant
// a = C*a0_norm*coeff_sum + dt_a0_inf. Bisection over the feasibility
// interval [C_min, inf).
EnergyMarginResult energy_inequality_margin(const EnergyMarginInput& in);

struct GronwallReport {
  bool differential_inequality_ok = false;
  bool bound_ok = false;
  double min_margin = 0.0;
};

// Verify y(t) <= exp(int a)(y(0) + int b) by quadrature, after checking
// the differential inequality y' <= a y + b on the samples.
GronwallReport gronwall_check(const std::vector<double>& times,
                              const std::vector<double>& y,
                              const std::vector<double>& a,
                              const std::vector<double>& b,
                              double slope_tol = 1e-6);

// Empirical Lipschitz constant of a nonlocal source G:
// max ||D_x[G(u)-G(v)]||_{H^{s-1}} / ||u-v||_{H^{s-1}} over sampled pairs.
double lipschitz_constant_estimate(
    const std::function<RealField(const RealField&)>& G, const Grid& grid,
    int ncomp, double s, int num_pairs, std::uint64_t seed, double ball_radius);

}  // namespace hyperflow
