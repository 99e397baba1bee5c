#include "hyperflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "hyperflow/cosmology.hpp"
#include "hyperflow/makino.hpp"
#include "hyperflow/random_fields.hpp"

namespace hyperflow {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int env_thread_cap() {
  const char* e = std::getenv("HYPERFLOW_THREADS");
  if (!e) return 1 << 16;
  int v = std::atoi(e);
  return v > 0 ? v : 1;
}

int effective_threads(const ExperimentConfig& c) {
  return std::max(1, std::min(c.threads, env_thread_cap()));
}

double experiment_norm(const RealField& u, const ExperimentConfig& c) {
  if (c.use_weighted_norm) {
    NormSpec ns{c.s, c.delta, c.j_max};
    DyadicPartition part;
    part.j_max = c.j_max;
    return weighted_norm(u, ns, part);
  }
  return hs_norm(u, c.s);
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["model"] = c.model;
  j["grid_points"] = c.grid_points;
  j["box_length"] = c.box_length;
  j["s"] = c.s;
  j["delta"] = c.delta;
  j["j_max"] = c.j_max;
  j["use_weighted_norm"] = c.use_weighted_norm;
  j["initial_family"] = c.initial_family;
  j["seed"] = c.seed;
  j["base_amplitude"] = c.base_amplitude;
  j["eps0"] = c.eps0;
  j["n_max"] = c.n_max;
  j["T"] = c.T;
  j["dt"] = c.dt;
  j["record_every"] = c.record_every;
  j["threads"] = c.threads;
  j["gamma"] = c.gamma;
  j["K"] = c.K;
  j["advection_speed"] = c.advection_speed;
  j["background_R0"] = c.background_R0;
  j["background_Rdot0"] = c.background_Rdot0;
  j["output_csv"] = c.output_csv;
  j["output_json"] = c.output_json;
  return j;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Least-squares slope of log(y) against log(x) over positive pairs.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig c;
  c.model = j.value("model", c.model);
  c.grid_points = j.value("grid_points", c.grid_points);
  c.box_length = j.value("box_length", c.box_length);
  c.s = j.value("s", c.s);
  c.delta = j.value("delta", c.delta);
  c.j_max = j.value("j_max", c.j_max);
  c.use_weighted_norm = j.value("use_weighted_norm", c.use_weighted_norm);
  c.initial_family = j.value("initial_family", c.initial_family);
  c.seed = j.value("seed", c.seed);
  c.base_amplitude = j.value("base_amplitude", c.base_amplitude);
  c.eps0 = j.value("eps0", c.eps0);
  c.n_max = j.value("n_max", c.n_max);
  c.T = j.value("T", c.T);
  c.dt = j.value("dt", c.dt);
  c.record_every = j.value("record_every", c.record_every);
  c.threads = j.value("threads", c.threads);
  c.gamma = j.value("gamma", c.gamma);
  c.K = j.value("K", c.K);
  c.advection_speed = j.value("advection_speed", c.advection_speed);
  c.background_R0 = j.value("background_R0", c.background_R0);
  c.background_Rdot0 = j.value("background_Rdot0", c.background_Rdot0);
  c.output_csv = j.value("output_csv", c.output_csv);
  c.output_json = j.value("output_json", c.output_json);
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
  return config_to_json(*this).dump(2);
}

std::uint64_t ExperimentConfig::config_hash() const {
  return fnv1a(to_json_text());
}

SystemModel make_model(const ExperimentConfig& config) {
  if (config.model == "burgers") {
    SystemModel s;
    s.name = "burgers";
    s.dim = 1;
    s.ncomp = 1;
    s.a_adv = [](const double* u, double, int, double* mat) { mat[0] = u[0]; };
    s.vanishing_at_zero = true;
    return s;
  }
  if (config.model == "advection") {
    SystemModel s;
    s.name = "advection";
    s.dim = 1;
    s.ncomp = 1;
    double c = config.advection_speed;
    s.a_adv = [c](const double*, double, int, double* mat) { mat[0] = c; };
    return s;
  }
  if (config.model == "epm_torus")
    return epm_system(EpmParams(config.K, config.gamma), EpmDomain::torus);
  if (config.model == "epm_compact")
    return epm_system(EpmParams(config.K, config.gamma), EpmDomain::free_space);
  if (config.model == "cosmo") {
    auto bg = std::make_shared<Background>(config.background_R0,
                                           config.background_Rdot0);
    return cosmo_system(EosModel{}, bg);
  }
  throw std::invalid_argument("unknown model: " + config.model);
}

RealField make_initial_data(const ExperimentConfig& config) {
  const double L = config.box_length;
  const double amp = config.base_amplitude;
  if (config.model == "burgers" || config.model == "advection") {
    Grid g = Grid::uniform(1, config.grid_points, L);
    if (config.initial_family == "random") {
      RealField u = random_smooth_field(g, 1, config.seed);
      u *= amp;
      return u;
    }
    RealField u(g, 1);
    u.fill(0, [L, amp](double x, double, double) {
      return amp * std::sin(kTwoPi * x / L);
    });
    return u;
  }
  if (config.model == "epm_torus") {
    Grid g = Grid::uniform(3, config.grid_points, L);
    RealField u(g, 4);
    u.fill(0, [L, amp](double x, double y, double z) {
      return amp * (1.0 + 0.5 * std::cos(kTwoPi * x / L) *
                              std::cos(kTwoPi * y / L) *
                              std::cos(kTwoPi * z / L));
    });
    return u;
  }
  if (config.model == "epm_compact") {
    Grid g = Grid::uniform(3, config.grid_points, L, true);
    RealField bump = bump_field(g, 0.2 * L, amp);
    RealField u(g, 4);
    for (std::size_t i = 0; i < g.num_points(); ++i) u.at(0, i) = bump.at(0, i);
    return u;
  }
  if (config.model == "cosmo") {
    Grid g = Grid::uniform(3, config.grid_points, L);
    RealField u(g, 4);
    // keep rho_hat + sigma well clear of zero over the run
    double a = 0.05 * amp;
    u.fill(0, [L, a](double x, double y, double z) {
      return a * std::sin(kTwoPi * x / L) * std::sin(kTwoPi * y / L) *
             std::sin(kTwoPi * z / L);
    });
    return u;
  }
  throw std::invalid_argument("unknown model: " + config.model);
}

RealField make_perturbation_direction(const ExperimentConfig& config) {
  RealField base = make_initial_data(config);
  const Grid& g = base.grid();
  RealField dir = random_smooth_field(g, base.ncomp(), config.seed + 101);
  if (config.model == "epm_compact") {
    // keep the perturbation inside the compact-support guard band
    RealField env = bump_field(g, 0.2 * config.box_length, 1.0);
    for (int c = 0; c < dir.ncomp(); ++c)
      for (std::size_t i = 0; i < g.num_points(); ++i)
        dir.at(c, i) *= env.at(0, i);
  }
  if (config.model == "cosmo") {
    double mean = dir.integral(0) / g.volume();
    for (std::size_t i = 0; i < g.num_points(); ++i) dir.at(0, i) -= mean;
    // sigma perturbations at the same scale as the background-safe base data
    dir *= 0.05;
  }
  return dir;
}

RunRecord run_flowmap(const ExperimentConfig& config) {
  RunRecord rec;
  rec.config = config;
  RealField u0 = make_initial_data(config);
  RealField dir = make_perturbation_direction(config);

  SolveOptions opts;
  opts.s_diag = config.s;
  opts.record_every = config.record_every;

  SystemModel base_model = make_model(config);
  Trajectory base = solve(base_model, u0, config.T, config.dt, opts);
  rec.base_aborted = base.aborted;
  rec.times = base.times;

  const int count = config.n_max + 1;
  rec.rows.assign(count, {});
  rec.per_time_diff.assign(count, {});

  auto worker = [&](int n) {
    FlowMapRow row;
    row.n = n;
    row.eps = config.eps0 * std::ldexp(1.0, -n);
    RealField scaled = dir;
    scaled *= row.eps;
    RealField u0n = u0 + scaled;
    row.d0_norm = experiment_norm(u0n - u0, config);
    try {
      SystemModel model = make_model(config);
      Trajectory tr = solve(model, u0n, config.T, config.dt, opts);
      if (tr.aborted || base.aborted) row.status = "aborted";
      std::size_t m = std::min(tr.states.size(), base.states.size());
      std::vector<double> diffs(m, 0.0);
      double sup = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        diffs[i] = experiment_norm(tr.states[i] - base.states[i], config);
        sup = std::max(sup, diffs[i]);
      }
      row.sup_diff = sup;
      rec.per_time_diff[n] = diffs;
    } catch (const std::exception&) {
      row.status = "excluded";
      row.sup_diff = 0.0;
    }
    rec.rows[n] = row;
  };

  int nthreads = std::min(effective_threads(config), count);
  if (nthreads <= 1) {
    for (int n = 0; n < count; ++n) worker(n);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (int n = t; n < count; n += nthreads) worker(n);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<double> xs, ys;
  for (const FlowMapRow& r : rec.rows)
    if (r.status == "ok") {
      xs.push_back(r.d0_norm);
      ys.push_back(r.sup_diff);
    }
  rec.fitted_theta = log_log_slope(xs, ys);
  return rec;
}

HolderReport run_holder_probe(const ExperimentConfig& config,
                              const std::vector<double>& s_sweep) {
  HolderReport rep;
  rep.config = config;
  for (double s : s_sweep) {
    ExperimentConfig c = config;
    c.s = s;
    RunRecord rec = run_flowmap(c);
    rep.points.push_back({s, rec.fitted_theta, rec.rows});
  }
  return rep;
}

namespace {

// H^s norm of the full matrix-valued coefficient field (axis >= 0 for A^a,
// axis == -1 for A0).
double matrix_field_hs(const SystemModel& sys, const RealField& state, double t,
                       int axis, double s, RealField* out = nullptr) {
  const Grid& g = state.grid();
  const int n = sys.ncomp;
  RealField mf(g, n * n);
  std::vector<double> u(n), mat(n * n);
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    for (int c = 0; c < n; ++c) u[c] = state.at(c, i);
    if (axis >= 0)
      sys.a_adv(u.data(), t, axis, mat.data());
    else
      sys.a0(u.data(), t, mat.data());
    for (int e = 0; e < n * n; ++e) mf.at(e, i) = mat[e];
  }
  if (out) *out = mf;
  return hs_norm(mf, s);
}

RealField effective_forcing(const SystemModel& sys, const RealField& state,
                            double t) {
  const Grid& g = state.grid();
  const int n = sys.ncomp;
  RealField f(g, n);
  if (sys.source) f = sys.source(state, t);
  if (sys.b) {
    std::vector<double> u(n), mat(n * n);
    for (std::size_t i = 0; i < g.num_points(); ++i) {
      for (int c = 0; c < n; ++c) u[c] = state.at(c, i);
      sys.b(u.data(), t, mat.data());
      for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int c = 0; c < n; ++c) acc += mat[r * n + c] * u[c];
        f.at(r, i) -= acc;
      }
    }
  }
  return f;
}

EnergyMarginInput collect_margin_input(const ExperimentConfig& config, int m) {
  SystemModel model = make_model(config);
  RealField u0 = make_initial_data(config);
  SolveOptions opts;
  opts.s_diag = m;
  opts.energy_m = model.has_a0() ? m : -1;
  // keep the per-record coefficient-norm evaluations to a handful
  int steps = std::max(1, static_cast<int>(std::llround(config.T / config.dt)));
  opts.record_every = std::max(config.record_every, steps / 10);
  Trajectory tr = solve(model, u0, config.T, config.dt, opts);
  if (tr.aborted)
    throw std::runtime_error("energy check: reference solve aborted: " +
                             tr.abort_reason);

  EnergyMarginInput in;
  const std::size_t nrec = tr.times.size();
  in.times = tr.times;
  in.u_sq.resize(nrec);
  in.f_sq.resize(nrec);
  in.coeff_sum.resize(nrec);
  const bool a0var = model.has_a0();
  std::vector<RealField> a0_fields(a0var ? nrec : 0);
  if (a0var) {
    in.a0_norm.resize(nrec);
    in.dt_a0_inf.resize(nrec);
  }
  for (std::size_t i = 0; i < nrec; ++i) {
    const RealField& st = tr.states[i];
    double t = tr.times[i];
    if (a0var) {
      in.u_sq[i] = weighted_energy(st, model, t, m);
      in.a0_norm[i] = matrix_field_hs(model, st, t, -1, m, &a0_fields[i]);
    } else {
      double hn = hs_norm(st, m);
      in.u_sq[i] = hn * hn;
    }
    double cs = 0.0;
    for (int a = 0; a < model.dim; ++a)
      cs += matrix_field_hs(model, st, t, a, m);
    in.coeff_sum[i] = cs;
    double fn = hs_norm(effective_forcing(model, st, t), m);
    in.f_sq[i] = fn * fn;
  }
  if (a0var) {
    for (std::size_t i = 0; i < nrec; ++i) {
      std::size_t j = (i + 1 < nrec) ? i + 1 : i - 1;
      double dt = std::abs(tr.times[j] - tr.times[i]);
      in.dt_a0_inf[i] = (a0_fields[j] - a0_fields[i]).max_abs() / dt;
    }
  }
  return in;
}

}  // namespace

EnergyCheckReport run_energy_check(const ExperimentConfig& config) {
  EnergyCheckReport rep;
  int m = std::max(1, static_cast<int>(std::llround(config.s)));
  rep.a0_variant = make_model(config).has_a0();
  rep.c_min_s = energy_inequality_margin(collect_margin_input(config, m)).c_min;
  rep.c_min_s_minus_1 =
      energy_inequality_margin(collect_margin_input(config, m - 1)).c_min;

  ExperimentConfig fine = config;
  fine.grid_points = 2 * config.grid_points;
  rep.c_min_s_refined =
      energy_inequality_margin(collect_margin_input(fine, m)).c_min;
  double lo = std::min(rep.c_min_s, rep.c_min_s_refined);
  double hi = std::max(rep.c_min_s, rep.c_min_s_refined);
  rep.refinement_stable = hi <= 2.0 * lo + 1e-6;
  return rep;
}

void emit_csv(const RunRecord& record, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "n,eps,d0_norm,sup_diff,status\r\n";
  for (const FlowMapRow& r : record.rows)
    out << r.n << ',' << r.eps << ',' << r.d0_norm << ',' << r.sup_diff << ','
        << r.status << "\r\n";
}

void emit_json(const RunRecord& record, const std::string& path) {
  ordered_json j;
  j["config"] = config_to_json(record.config);
  j["seed"] = record.config.seed;
  j["config_hash"] = record.config.config_hash();
  j["base_aborted"] = record.base_aborted;
  j["fitted_theta"] = record.fitted_theta;
  j["times"] = record.times;
  ordered_json rows = ordered_json::array();
  for (const FlowMapRow& r : record.rows) {
    ordered_json jr;
    jr["n"] = r.n;
    jr["eps"] = r.eps;
    jr["d0_norm"] = r.d0_norm;
    jr["sup_diff"] = r.sup_diff;
    jr["status"] = r.status;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  j["per_time_diff"] = record.per_time_diff;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

namespace {

// Band-limited trigonometric polynomial with grid-independent random
// coefficients, so refined-grid evaluations sample the same function.
RealField trig_poly_field(const Grid& grid, std::uint64_t seed, int kmax = 4) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const int d = grid.dim;
  std::vector<std::array<double, 3>> amp_cos(kmax), amp_sin(kmax);
  for (int k = 0; k < kmax; ++k)
    for (int a = 0; a < 3; ++a) {
      amp_cos[k][a] = nd(rng) / ((k + 1) * (k + 1));
      amp_sin[k][a] = nd(rng) / ((k + 1) * (k + 1));
    }
  RealField f(grid, 1);
  f.fill(0, [&](double x, double y, double z) {
    double coords[3] = {x, y, z};
    double v = 0.0;
    for (int k = 0; k < kmax; ++k)
      for (int a = 0; a < d; ++a) {
        double ph = kTwoPi * (k + 1) * coords[a] / grid.box[a];
        v += amp_cos[k][a] * std::cos(ph) + amp_sin[k][a] * std::sin(ph);
      }
    return v;
  });
  return f;
}

struct SuiteRatios {
  double kato_ponce = 0.0;
  double multiplication = 0.0;
  double multiplication_weighted = 0.0;
  double power = 0.0;
  double power_weighted = 0.0;
  double difference = 0.0;
};

SuiteRatios suite_ratios(std::uint64_t seed, int samples, int n) {
  Grid g = Grid::uniform(1, n, kTwoPi);
  // the compactly supported weighted variants need enough resolution for
  // the localized pieces to rescale cleanly
  Grid gc = Grid::uniform(1, std::max(n, 128), 16.0, true);
  RealField env = bump_field(gc, 2.0, 1.0);
  SuiteRatios r;
  for (int i = 0; i < samples; ++i) {
    RealField f = trig_poly_field(g, seed + 10 * i);
    RealField h = trig_poly_field(g, seed + 10 * i + 1);
    r.kato_ponce = std::max(r.kato_ponce, kato_ponce_ratio(3.0, f, h));
    r.multiplication =
        std::max(r.multiplication, multiplication_ratio(f, h, 1.0, 2.0, 2.0));
    RealField u = f;
    double scale = 1.0 / std::max(f.max_abs(), 1e-12);
    for (std::size_t p = 0; p < u.num_points(); ++p)
      u.at(0, p) = 1.1 + scale * f.at(0, p);
    r.power = std::max(r.power, power_estimate_ratio(u, 2.0, 2.0));
    auto sq = [](double x) { return x * x; };
    r.difference = std::max(r.difference, difference_estimate_ratio(sq, f, h, 2.0));

    // weighted variants on compactly supported data
    RealField fc = trig_poly_field(gc, seed + 10 * i + 2);
    RealField hc = trig_poly_field(gc, seed + 10 * i + 3);
    for (std::size_t p = 0; p < fc.num_points(); ++p) {
      fc.at(0, p) *= env.at(0, p);
      hc.at(0, p) *= env.at(0, p);
    }
    WeightedIndices wi;
    wi.delta = 0.0;
    wi.delta1 = 0.0;
    wi.delta2 = 0.0;
    r.multiplication_weighted =
        std::max(r.multiplication_weighted,
                 multiplication_ratio(fc, hc, 1.0, 2.0, 2.0, wi));
    RealField uc = fc;
    for (std::size_t p = 0; p < uc.num_points(); ++p)
      uc.at(0, p) = fc.at(0, p) * fc.at(0, p);
    PowerEstimateOptions po;
    po.delta = 0.0;
    r.power_weighted =
        std::max(r.power_weighted, power_estimate_ratio(uc, 2.0, 2.0, po));
  }
  return r;
}

void suite_entry(ordered_json& j, const char* name, double coarse, double fine) {
  ordered_json e;
  e["ratio"] = coarse;
  e["ratio_refined"] = fine;
  double base = std::max({std::abs(coarse), std::abs(fine), 1e-300});
  e["relative_change"] = std::abs(fine - coarse) / base;
  e["finite"] = std::isfinite(coarse) && std::isfinite(fine);
  j[name] = e;
}

}  // namespace

std::string run_estimate_suite_json(std::uint64_t seed, int samples,
                                    int grid_points) {
  SuiteRatios coarse = suite_ratios(seed, samples, grid_points);
  SuiteRatios fine = suite_ratios(seed, samples, 2 * grid_points);
  ordered_json j;
  j["seed"] = seed;
  j["samples"] = samples;
  j["grid_points"] = grid_points;
  suite_entry(j, "kato_ponce", coarse.kato_ponce, fine.kato_ponce);
  suite_entry(j, "multiplication", coarse.multiplication, fine.multiplication);
  suite_entry(j, "multiplication_weighted", coarse.multiplication_weighted,
              fine.multiplication_weighted);
  suite_entry(j, "power", coarse.power, fine.power);
  suite_entry(j, "power_weighted", coarse.power_weighted, fine.power_weighted);
  suite_entry(j, "difference", coarse.difference, fine.difference);
  bool all = true;
  for (const char* k : {"kato_ponce", "multiplication", "multiplication_weighted",
                        "power", "power_weighted", "difference"})
    all = all && j[k]["finite"].get<bool>();
  j["all_finite"] = all;
  return j.dump(2);
}

}  // namespace hyperflow
