#include "hyperflow/estimates.hpp"

#include <cmath>
#include <limits>

#include "hyperflow/random_fields.hpp"
#include "hyperflow/spectral_ops.hpp"

namespace hyperflow {

namespace {

RealField apply_lambda_d(const RealField& u, double s, int axis) {
  SpectralField spec = transform(u);
  partial_derivative_inplace(spec, axis);
  lambda_s_inplace(spec, s);
  return inverse_transform(spec);
}

double max_grad_inf(const RealField& f) {
  double m = 0.0;
  for (int a = 0; a < f.grid().dim; ++a)
    m = std::max(m, partial_derivative(f, a).max_abs());
  return m;
}

RealField pointwise_product(const RealField& u, const RealField& v) {
  RealField out(u.grid(), 1);
  for (std::size_t i = 0; i < u.num_points(); ++i)
    out.at(0, i) = u.at(0, i) * v.at(0, i);
  return out;
}

}  // namespace

double kato_ponce_ratio(double s, const RealField& f, const RealField& g,
                        int axis) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("kato_ponce_ratio: grid mismatch");
  // P = Lambda^{s-1} d_axis, a pseudodifferential operator of order s.
  RealField pfg = apply_lambda_d(pointwise_product(f, g), s - 1.0, axis);
  RealField pg = apply_lambda_d(g, s - 1.0, axis);
  RealField lhs_field = pfg - pointwise_product(f, pg);
  double lhs = l2_norm(lhs_field);
  double bracket = max_grad_inf(f) * hs_norm(g, s - 1.0) +
                   hs_norm(f, s) * g.max_abs();
  if (bracket == 0.0) {
    if (lhs > 1e-12)
      throw std::runtime_error("kato_ponce_ratio: zero bracket with nonzero commutator");
    return 0.0;
  }
  return lhs / bracket;
}

double multiplication_ratio(const RealField& u, const RealField& v, double s,
                            double s1, double s2,
                            const std::optional<WeightedIndices>& weighted) {
  const int d = u.grid().dim;
  if (!(s <= std::min(s1, s2)))
    throw std::invalid_argument("multiplication_ratio: constraint s <= min(s1,s2) violated");
  if (!(s + 0.5 * d < s1 + s2))
    throw std::invalid_argument("multiplication_ratio: constraint s + d/2 < s1 + s2 violated");
  if (!(0.0 <= s1 + s2))
    throw std::invalid_argument("multiplication_ratio: constraint 0 <= s1 + s2 violated");
  RealField uv = pointwise_product(u, v);
  if (!weighted) {
    double den = hs_norm(u, s1) * hs_norm(v, s2);
    return den > 0.0 ? hs_norm(uv, s) / den : 0.0;
  }
  const WeightedIndices& w = *weighted;
  if (!(w.delta - 0.5 * d <= w.delta1 + w.delta2))
    throw std::invalid_argument(
        "multiplication_ratio: constraint delta - d/2 <= delta1 + delta2 violated");
  NormSpec ns{s, w.delta, w.base.j_max};
  NormSpec ns1{s1, w.delta1, w.base.j_max};
  NormSpec ns2{s2, w.delta2, w.base.j_max};
  double den = weighted_norm(u, ns1, w.partition) * weighted_norm(v, ns2, w.partition);
  return den > 0.0 ? weighted_norm(uv, ns, w.partition) / den : 0.0;
}

double power_estimate_ratio(const RealField& u, double beta, double s,
                            const PowerEstimateOptions& opts) {
  for (double x : u.data())
    if (x < 0.0) throw std::invalid_argument("power_estimate_ratio: u must be >= 0");
  if (!opts.nonlinear_variant) {
    if (!(s > 0.0 && s < beta + 0.5))
      throw std::invalid_argument("power_estimate_ratio: range 0 < s < beta + 1/2 violated");
  }
  RealField up(u.grid(), 1);
  double expo = opts.nonlinear_variant ? beta - 1.0 : beta;
  for (std::size_t i = 0; i < u.num_points(); ++i)
    up.at(0, i) = std::pow(u.at(0, i), expo);

  if (opts.nonlinear_variant) {
    double delta = opts.delta.value_or(0.0);
    DyadicPartition part = opts.partition;
    part.j_max = opts.j_max;
    NormSpec lhs_spec{s - 1.0, delta + 1.0, opts.j_max};
    NormSpec rhs_spec{s, delta, opts.j_max};
    double den = std::pow(weighted_norm(u, rhs_spec, part), beta - 1.0);
    return den > 0.0 ? weighted_norm(up, lhs_spec, part) / den : 0.0;
  }
  if (opts.delta) {
    DyadicPartition part = opts.partition;
    part.j_max = opts.j_max;
    NormSpec spec{s, *opts.delta, opts.j_max};
    double den = weighted_norm(u, spec, part);
    return den > 0.0 ? weighted_norm(up, spec, part) / den : 0.0;
  }
  double den = hs_norm(u, s);
  return den > 0.0 ? hs_norm(up, s) / den : 0.0;
}

double difference_estimate_ratio(const std::function<double(double)>& F,
                                 const RealField& u, const RealField& v, double s) {
  if (!(u.grid() == v.grid()) || u.ncomp() != v.ncomp())
    throw std::invalid_argument("difference_estimate_ratio: grid mismatch");
  RealField diff(u.grid(), u.ncomp());
  for (std::size_t i = 0; i < u.data().size(); ++i)
    diff.data()[i] = F(u.data()[i]) - F(v.data()[i]);
  double num = hs_norm(diff, s);
  RealField umv = u - v;
  double den = (1.0 + hs_norm(u, s) + hs_norm(v, s)) * hs_norm(umv, s);
  if (den == 0.0 || hs_norm(umv, s) == 0.0) return 0.0;
  return num / den;
}

namespace {

// cumulative trapezoid integral of f over times
std::vector<double> cumtrapz(const std::vector<double>& t, const std::vector<double>& f) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return out;
}

bool feasible_at(const EnergyMarginInput& in, double C, std::vector<double>* margin) {
  const std::size_t n = in.times.size();
  const bool a0var = !in.a0_norm.empty();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = a0var ? C * in.a0_norm[i] * in.coeff_sum[i] + in.dt_a0_inf[i]
                 : C * in.coeff_sum[i];
  std::vector<double> inta = cumtrapz(in.times, a);
  std::vector<double> intf = cumtrapz(in.times, in.f_sq);
  if (margin) margin->assign(n, 0.0);
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    double rhs = std::exp(inta[i]) * (in.u_sq[0] + intf[i]);
    double m = rhs - in.u_sq[i];
    if (margin) (*margin)[i] = m;
    // small relative slack for quadrature error in the time integrals
    if (m < -1e-9 * std::max(1.0, in.u_sq[i])) ok = false;
  }
  return ok;
}

}  // namespace

EnergyMarginResult energy_inequality_margin(const EnergyMarginInput& in) {
  const std::size_t n = in.times.size();
  if (n == 0 || in.u_sq.size() != n || in.f_sq.size() != n || in.coeff_sum.size() != n)
    throw std::invalid_argument("energy_inequality_margin: inconsistent input lengths");
  if (!in.a0_norm.empty() && (in.a0_norm.size() != n || in.dt_a0_inf.size() != n))
    throw std::invalid_argument("energy_inequality_margin: inconsistent A0 inputs");

  EnergyMarginResult res;
  if (feasible_at(in, 0.0, nullptr)) {
    res.c_min = 0.0;
    res.feasible = true;
    feasible_at(in, 0.0, &res.margin);
    return res;
  }
  double hi = 1.0;
  while (!feasible_at(in, hi, nullptr)) {
    hi *= 2.0;
    if (hi > 1e12) {
      res.feasible = false;
      throw std::runtime_error(
          "energy_inequality_margin: inequality unsatisfiable for any finite C");
    }
  }
  double lo = 0.0;
  for (int iter = 0; iter < 60; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (feasible_at(in, mid, nullptr)) hi = mid;
    else lo = mid;
  }
  res.c_min = hi;
  res.feasible = true;
  feasible_at(in, hi, &res.margin);
  return res;
}

GronwallReport gronwall_check(const std::vector<double>& times,
                              const std::vector<double>& y,
                              const std::vector<double>& a,
                              const std::vector<double>& b, double slope_tol) {
  const std::size_t n = times.size();
  if (y.size() != n || a.size() != n || b.size() != n || n < 2)
    throw std::invalid_argument("gronwall_check: inconsistent input lengths");
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] < 0.0 || b[i] < 0.0 || y[i] < 0.0)
      throw std::invalid_argument("gronwall_check: a, b, y must be nonnegative");

  GronwallReport rep;
  rep.differential_inequality_ok = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double slope = (y[i + 1] - y[i]) / (times[i + 1] - times[i]);
    double bound = 0.5 * (a[i] * y[i] + b[i] + a[i + 1] * y[i + 1] + b[i + 1]);
    if (slope > bound + slope_tol * std::max(1.0, std::abs(bound)))
      rep.differential_inequality_ok = false;
  }
  std::vector<double> inta = cumtrapz(times, a);
  std::vector<double> intb = cumtrapz(times, b);
  rep.bound_ok = true;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double rhs = std::exp(inta[i]) * (y[0] + intb[i]);
    double m = rhs - y[i];
    rep.min_margin = std::min(rep.min_margin, m);
    if (m < -1e-8 * std::max(1.0, rhs)) rep.bound_ok = false;
  }
  return rep;
}

double lipschitz_constant_estimate(
    const std::function<RealField(const RealField&)>& G, const Grid& grid,
    int ncomp, double s, int num_pairs, std::uint64_t seed, double ball_radius) {
  double best = 0.0;
  for (int p = 0; p < num_pairs; ++p) {
    RealField u = random_smooth_field(grid, ncomp, seed + 2 * p);
    RealField v = random_smooth_field(grid, ncomp, seed + 2 * p + 1);
    u *= ball_radius / std::max(hs_norm(u, s), 1e-12);
    v *= ball_radius / std::max(hs_norm(v, s), 1e-12);
    RealField dg = G(u) - G(v);
    double num = 0.0;
    for (int a = 0; a < grid.dim; ++a)
      num = std::max(num, hs_norm(partial_derivative(dg, a), s - 1.0));
    double den = hs_norm(u - v, s - 1.0);
    if (den > 1e-12) best = std::max(best, num / den);
  }
  return best;
}

}  // namespace hyperflow
