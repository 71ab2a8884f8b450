#include "logdamp/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>

#include "logdamp/analysis.hpp"
#include "logdamp/cli/rng.hpp"
#include "logdamp/errors.hpp"
#include "logdamp/fit.hpp"
#include "logdamp/model.hpp"
#include "logdamp/quadrature.hpp"

#ifndef LOGDAMP_VERSION
#define LOGDAMP_VERSION "unknown"
#endif

namespace logdamp::cli {

using json = nlohmann::ordered_json;

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Within: return "within";
    case Relation::AtMost: return "at_most";
    case Relation::LessThan: return "less_than";
  }
  return "?";
}

Assertion judge(std::string name, Relation relation, double predicted, double measured,
                double tolerance) {
  bool ok = false;
  switch (relation) {
    case Relation::Within: ok = std::abs(measured - predicted) <= tolerance; break;
    case Relation::AtMost: ok = measured <= predicted + tolerance; break;
    case Relation::LessThan: ok = measured < predicted; break;
  }
  return {std::move(name), relation, predicted, measured, tolerance, ok};
}

bool RunResult::passed() const noexcept {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

// NaN marks an absent value.
struct SeriesTable {
  std::vector<double> t;
  std::vector<double> solution, profile, error, energy;

  explicit SeriesTable(std::vector<double> times)
      : t(std::move(times)),
        solution(t.size(), kAbsent),
        profile(t.size(), kAbsent),
        error(t.size(), kAbsent),
        energy(t.size(), kAbsent) {}

  std::string csv() const {
    std::string out = std::string(kSeriesHeader) + "\n";
    auto cell = [](double v) { return std::isnan(v) ? std::string() : number(v); };
    for (std::size_t i = 0; i < t.size(); ++i) {
      out += number(t[i]) + "," + cell(solution[i]) + "," + cell(profile[i]) + "," +
             cell(error[i]) + "," + cell(energy[i]) + "\n";
    }
    return out;
  }
};

std::string plot(const std::string& x_label, const std::string& y_label,
                 const std::vector<double>& xs, const std::vector<double>& ys) {
  std::string out = "# " + x_label + " " + y_label + "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isnan(ys[i])) out += number(xs[i]) + " " + number(ys[i]) + "\n";
  }
  return out;
}

// Norms that are infinite at some times (phi2 tail) are reported as absent.
void fill_column(std::vector<double>& column, const std::vector<double>& times,
          const std::function<double(double)>& norm) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    try {
      column[i] = norm(times[i]);
    } catch (const Divergent&) {
      column[i] = kAbsent;
    }
  }
}

json fit_json(const DecayFit& f) {
  return json{{"law", to_string(f.law)},
              {"exponent", f.exponent},
              {"intercept", f.intercept},
              {"max_rel_residual", f.max_rel_residual},
              {"t_min", f.t_min},
              {"t_max", f.t_max},
              {"points", f.points},
              {"ratio_first", f.ratio_first},
              {"ratio_last", f.ratio_last},
              {"ratio_drift", f.ratio_drift}};
}

json config_json(const ExperimentConfig& c) {
  return json{{"command", to_string(c.command)},
              {"n", c.n},
              {"theta", c.theta},
              {"datum", to_string(c.datum)},
              {"width", c.width},
              {"amplitude", c.amplitude},
              {"t_min", c.t_min},
              {"t_max", c.t_max},
              {"points_per_decade", c.points_per_decade},
              {"rel_tol", c.rel_tol},
              {"abs_tol", c.abs_tol},
              {"seed", c.seed},
              {"times", c.times},
              {"x_max", c.x_max},
              {"dx", c.dx},
              {"samples", c.samples}};
}

struct Context {
  const ExperimentConfig& cfg;
  SpectralState state;
  NormOptions opts;
  RunResult& result;
  json& payload;

  std::vector<double> window() const {
    return time_grid(cfg.t_min, cfg.t_max, cfg.points_per_decade);
  }
  void expect(Assertion a) { result.assertions.push_back(std::move(a)); }
  void file(std::string name, std::string contents) {
    result.files.push_back({std::move(name), std::move(contents)});
  }
};

void run_thresholds(Context& c) {
  const Thresholds& th = c.state.thresholds();
  c.payload["delta"] = th.delta;
  c.payload["eta"] = th.eta;
  c.payload["eta_cubed"] = th.eta_cubed;
  c.payload["beta"] = th.beta;
  c.payload["delta_residual"] = th.delta_residual;
  c.payload["beta_residual"] = th.beta_residual;
  c.payload["chain_holds"] = th.chain_holds();
  c.expect(judge("chain beta <= eta^3 < eta < delta < 1", Relation::Within, 1.0,
                 th.chain_holds() ? 1.0 : 0.0, 0.0));
  c.expect(judge("delta root residual", Relation::AtMost, 0.0, th.delta_residual, 1e-12));
  const double eta = std::pow(25.0, -1.0 / (2.0 - 4.0 * c.cfg.theta));
  c.expect(judge("eta = 25^{-1/(2 - 4 theta)}", Relation::Within, eta, th.eta, 1e-14 * eta));
}

void run_simulate(Context& c) {
  SeriesTable table(c.window());
  const auto& s = c.state;
  fill_column(table.solution, table.t, [&](double t) { return l2_norm_sq(s, NormKind::Solution, t, c.opts); });
  fill_column(table.profile, table.t, [&](double t) { return l2_norm_sq(s, NormKind::Profile, t, c.opts); });
  fill_column(table.error, table.t, [&](double t) { return l2_norm_sq(s, NormKind::ProfileError, t, c.opts); });
  fill_column(table.energy, table.t, [&](double t) { return energy(s, t, c.opts); });
  c.payload["points"] = table.t.size();
  c.file("series_simulate.csv", table.csv());
  c.file("plot_solution.dat", plot("t", "norm_solution_sq", table.t, table.solution));
  c.file("plot_profile.dat", plot("t", "norm_profile_sq", table.t, table.profile));
  c.file("plot_error.dat", plot("t", "norm_error_sq", table.t, table.error));
  c.file("plot_energy.dat", plot("t", "energy", table.t, table.energy));
}

SeriesTable solution_series(Context& c) {
  SeriesTable table(c.window());
  fill_column(table.solution, table.t,
       [&](double t) { return l2_norm_sq(c.state, NormKind::Solution, t, c.opts); });
  return table;
}

void run_decay_fit(Context& c) {
  const SeriesTable table = solution_series(c);
  const double n = c.cfg.n;
  const double th = c.cfg.theta;
  const double predicted = -(n - 4 * th) / (4 * (1 - th));
  const DecayFit fit = fit_power_law(table.t, table.solution);
  c.payload["predicted_exponent"] = predicted;
  c.payload["fit"] = fit_json(fit);
  c.expect(judge("decay exponent of ||u||", Relation::Within, predicted, fit.exponent, 0.03));
  c.file("series_decay.csv", table.csv());
  c.file("plot_solution.dat", plot("t", "norm_solution_sq", table.t, table.solution));
}

void run_profile_error(Context& c) {
  SeriesTable table(c.window());
  fill_column(table.profile, table.t,
       [&](double t) { return l2_norm_sq(c.state, NormKind::Profile, t, c.opts); });
  fill_column(table.error, table.t,
       [&](double t) { return l2_norm_sq(c.state, NormKind::ProfileError, t, c.opts); });
  if (std::any_of(table.profile.begin(), table.profile.end(), [](double v) { return std::isnan(v); })) {
    throw Divergent("profile norm is infinite inside the window; raise t_min above n / (4 theta)");
  }
  const NormSeries error{NormKind::ProfileError, table.t, table.error};
  const NormSeries profile{NormKind::Profile, table.t, table.profile};
  const double abs_tol = std::max(c.cfg.abs_tol, 1e-300);
  const ProfileErrorReport r = assess_profile_error(c.cfg.n, c.cfg.theta, error, profile, abs_tol);

  c.payload["rho"] = r.rho;
  c.payload["exact_match"] = r.exact_match;
  c.payload["error_fit"] = r.error_fit ? fit_json(*r.error_fit) : json(nullptr);
  c.payload["profile_fit"] = r.profile_fit ? fit_json(*r.profile_fit) : json(nullptr);
  if (r.exact_match) {
    c.expect({"||u - phi|| below abs_tol", Relation::AtMost, 0.0, std::nullopt, abs_tol, true});
  } else {
    c.expect(judge("||u - phi|| exponent vs -rho", Relation::AtMost, -r.rho,
                   r.error_fit->exponent, 0.05));
    c.expect(judge("||u - phi|| exponent below ||phi|| exponent", Relation::LessThan,
                   r.profile_fit->exponent, r.error_fit->exponent, 0.0));
  }
  c.file("series_profile_error.csv", table.csv());
  c.file("plot_profile.dat", plot("t", "norm_profile_sq", table.t, table.profile));
  c.file("plot_error.dat", plot("t", "norm_error_sq", table.t, table.error));
}

void run_blowup(Context& c) {
  const SeriesTable table = solution_series(c);
  const double th = c.cfg.theta;
  const DecayFit power = fit_power_law(table.t, table.solution);
  c.payload["power_fit"] = fit_json(power);
  if (std::abs(th - 0.25) < 1e-12) {
    const DecayFit sl = fit_sqrt_log(table.t, table.solution);
    c.payload["law"] = "sqrt-log";
    c.payload["sqrt_log_fit"] = fit_json(sl);
    c.payload["log_power_fit"] = fit_json(fit_log_power(table.t, table.solution));
    c.expect(judge("||u||^2 / log t drift across the window", Relation::AtMost, 0.0,
                   sl.ratio_drift, 0.10));
    c.expect(judge("power-law exponent of ||u||", Relation::Within, 0.0, power.exponent, 0.03));
  } else {
    const double predicted = (4 * th - 1) / (4 * th);
    c.payload["law"] = "power";
    c.payload["predicted_exponent"] = predicted;
    c.expect(judge("growth exponent of ||u||", Relation::Within, predicted, power.exponent, 0.02));
    c.expect(judge("||u(t_min)||^2 below ||u(t_max)||^2", Relation::LessThan,
                   table.solution.back(), table.solution.front(), 0.0));
  }
  c.file("series_blowup.csv", table.csv());
  c.file("plot_solution.dat", plot("t", "norm_solution_sq", table.t, table.solution));
}

void run_lemma_check(Context& c) {
  const SplitMix64 root(c.cfg.seed);
  const int samples = c.cfg.samples;

  json slopes = json::array();
  const std::vector<double> times = time_grid(1e3, 1e7, 4);
  for (double p : {-0.5, 0.0, 1.0, 2.0}) {
    std::vector<double> values;
    for (double t : times) values.push_back(i_p(t, p));
    const double slope = 2 * fit_power_law(times, values).exponent;
    slopes.push_back({{"p", p}, {"slope", slope}});
    c.expect(judge("I_p slope, p = " + tag(p), Relation::Within, -(p + 1) / 2, slope, 0.01));
    c.file("plot_ip_p" + tag(p) + ".dat", plot("t", "I_p", times, values));
  }
  c.payload["i_p_slopes"] = slopes;

  const double j40 = j_p(40.0, 0.0) * 39.0 * std::pow(2.0, 40.0);
  const double j60 = j_p(60.0, 0.0) * 59.0 * std::pow(2.0, 60.0);
  c.payload["j_0_scaled"] = {{"t40", j40}, {"t60", j60}};
  c.expect(judge("J_0 (t - 1) 2^t ratio between t = 40 and 60", Relation::Within, 1.0, j40 / j60, 0.05));

  SplitMix64 sub = root.split(1);
  double worst_sub = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = 0.2 + 1.8 * sub.uniform();
    const double q = -0.5 + 2.0 * sub.uniform();
    const double t = std::pow(10.0, 5.0 * sub.uniform());
    const double lhs = weighted_power_integral(t, a, q, 1.0);
    const double rhs = 2.0 / a * i_p(t, 2.0 * (q + 1.0) / a - 1.0);
    worst_sub = std::max(worst_sub, std::abs(lhs / rhs - 1));
  }
  c.expect(judge("substitution identity, max relative deviation", Relation::AtMost, 0.0, worst_sub, 1e-9));

  const ModelParams& p = c.state.params();
  const Thresholds& th = c.state.thresholds();
  SplitMix64 vieta = root.split(2);
  double worst_vieta = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = std::pow(10.0, -12.0 + 14.0 * vieta.uniform());
    const CharRoots roots = char_roots(r, p);
    const double L = damping_symbol(r, p);
    auto rel = [](double x, double y) { return std::abs(x - y) / std::abs(y); };
    if (roots.zone == Zone::Low) {
      worst_vieta = std::max({worst_vieta, rel(roots.lambda_plus + roots.lambda_minus, -L),
                              rel(roots.lambda_plus * roots.lambda_minus, r * r)});
    } else if (roots.zone == Zone::High) {
      worst_vieta = std::max({worst_vieta, rel(2 * roots.a, L),
                              rel(roots.a * roots.a + roots.b() * roots.b(), r * r)});
    }
  }
  c.expect(judge("Vieta identities, max relative deviation", Relation::AtMost, 0.0, worst_vieta, 1e-12));

  double g_lo = 2.0;
  double g_hi = 1.0;
  for (int i = 0; i < 10000; ++i) {
    const double g = g_function(th.delta * i / 9999.0, p, th);
    g_lo = std::min(g_lo, g);
    g_hi = std::max(g_hi, g);
  }
  c.payload["g_range"] = {g_lo, g_hi};
  c.expect(judge("min g on [0, delta]", Relation::Within, 1.5, g_lo, 0.5));
  c.expect(judge("max g on [0, delta]", Relation::Within, 1.5, g_hi, 0.5));

  // R(r) ~ 2 r^{2 - 6 theta} as r -> 0.
  const double r_small = std::min(1e-14, th.eta_cubed);
  const double r_ratio = r_function(r_small, p, th) / (2 * std::pow(r_small, 2 - 6 * c.cfg.theta));
  c.payload["r_asymptote_ratio"] = r_ratio;
  c.expect(judge("R(r) / (2 r^{2 - 6 theta}) near r = 0", Relation::Within, 1.0, r_ratio, 0.01));

  SplitMix64 ode = root.split(3);
  double worst_ode = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = std::pow(10.0, -4.0 + 6.0 * ode.uniform());
    const double t = std::pow(10.0, -2.0 + 4.0 * ode.uniform());
    const CharRoots roots = char_roots(r, p);
    const double L = damping_symbol(r, p);
    const double h = 0.02 / std::max({L, r, 1.0 / t});
    auto u = [&](double tau) { return propagator(roots, tau).value; };
    const double utt =
        (-u(t + 2 * h) + 16 * u(t + h) - 30 * u(t) + 16 * u(t - h) - u(t - 2 * h)) / (12 * h * h);
    const double ut = propagator(roots, t).derivative;
    const double scale = std::max({std::abs(utt), std::abs(L * ut), std::abs(r * r * u(t))});
    worst_ode = std::max(worst_ode, std::abs(utt + L * ut + r * r * u(t)) / scale);
  }
  c.expect(judge("mode ODE residual, max normalized", Relation::AtMost, 0.0, worst_ode, 1e-5));
  c.payload["samples"] = samples;
}

void run_energy_check(Context& c) {
  const std::vector<double> checks = c.cfg.times.empty() ? std::vector<double>{1.0, 10.0, 100.0}
                                                         : c.cfg.times;
  json balances = json::array();
  for (double T : checks) {
    const EnergyBalance b = energy_balance(c.state, T, c.opts);
    balances.push_back({{"t", b.t},
                        {"energy_initial", b.energy_initial},
                        {"energy_final", b.energy_final},
                        {"dissipated", b.dissipated},
                        {"relative_residual", b.relative_residual}});
    c.expect(judge("energy identity residual at T = " + tag(T), Relation::AtMost, 0.0,
                   b.relative_residual, 1e-5));
  }
  c.payload["balances"] = balances;

  const double t_end = *std::max_element(checks.begin(), checks.end());
  std::vector<double> times{0.0};
  for (double t : time_grid(std::min(1e-2, 0.1 * t_end), t_end, c.cfg.points_per_decade)) {
    times.push_back(t);
  }
  SeriesTable table(times);
  fill_column(table.energy, table.t, [&](double t) { return energy(c.state, t, c.opts); });
  int increases = 0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(table.energy[i] <= table.energy[i - 1])) ++increases;
  }
  c.expect(judge("energy increases on the grid", Relation::Within, 0.0, increases, 0.0));
  c.file("series_energy.csv", table.csv());
  c.file("plot_energy.dat", plot("t", "energy", table.t, table.energy));
}

void run_reconstruct(Context& c) {
  const std::vector<double> checks = c.cfg.times.empty() ? std::vector<double>{0.5} : c.cfg.times;
  const double h = c.cfg.dx;
  const int steps = static_cast<int>(std::floor(c.cfg.x_max / h));
  std::vector<double> half;
  for (int i = 0; i <= steps; ++i) half.push_back(i * h);

  for (double t : checks) {
    const std::vector<double> u = reconstruct_1d(c.state, t, half, c.cfg.rel_tol);
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      sum += (i == 0 || i + 1 == u.size() ? 0.5 : 1.0) * u[i] * u[i];
    }
    const double grid = 2 * std::numbers::pi * 2 * h * sum;
    const double spectral = l2_norm_sq(c.state, NormKind::Solution, t, c.opts);
    c.expect(judge("Parseval ratio at t = " + tag(t), Relation::Within, 1.0, grid / spectral, 0.02));

    std::vector<double> xs;
    std::vector<double> values;
    for (std::size_t i = u.size(); i-- > 1;) {
      xs.push_back(-half[i]);
      values.push_back(u[i]);
    }
    xs.insert(xs.end(), half.begin(), half.end());
    values.insert(values.end(), u.begin(), u.end());
    c.file("plot_u_t" + tag(t) + ".dat", plot("x", "u", xs, values));
  }

  const std::vector<double> probe{-3.0, 3.0, -0.25, 0.25, -17.5, 17.5};
  const std::vector<double> up = reconstruct_1d(c.state, checks.front(), probe, c.cfg.rel_tol);
  double asym = 0.0;
  for (std::size_t i = 0; i < probe.size(); i += 2) asym = std::max(asym, std::abs(up[i] - up[i + 1]));
  c.expect(judge("max |u(t, x) - u(t, -x)|", Relation::Within, 0.0, asym, 0.0));

  const double t_small = 1e-4;
  const double u0 = reconstruct_1d(c.state, t_small, {0.0}, c.cfg.rel_tol)[0];
  const double expected = t_small * c.state.datum().value(0.0);
  c.payload["small_t"] = {{"t", t_small}, {"u", u0}, {"t_u1", expected}};
  c.expect(judge("u(1e-4, 0) / (t u1(0))", Relation::Within, 1.0, u0 / expected, 0.01));
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  validate(cfg);
  RunResult result;
  json payload = json::object();
  NormOptions opts;
  opts.rel_tol = cfg.rel_tol;
  opts.abs_tol = cfg.abs_tol;
  Context c{cfg, SpectralState(ModelParams(cfg.n, cfg.theta), cfg.make_datum()), opts, result,
            payload};

  switch (cfg.command) {
    case Command::Thresholds: run_thresholds(c); break;
    case Command::Simulate: run_simulate(c); break;
    case Command::DecayFit: run_decay_fit(c); break;
    case Command::ProfileError: run_profile_error(c); break;
    case Command::Blowup: run_blowup(c); break;
    case Command::LemmaCheck: run_lemma_check(c); break;
    case Command::EnergyCheck: run_energy_check(c); break;
    case Command::Reconstruct: run_reconstruct(c); break;
  }

  json rows = json::array();
  for (const Assertion& a : result.assertions) {
    rows.push_back({{"name", a.name},
                    {"relation", to_string(a.relation)},
                    {"predicted", a.predicted},
                    {"measured", a.measured ? json(*a.measured) : json(nullptr)},
                    {"tolerance", a.tolerance},
                    {"verdict", a.passed ? "pass" : "fail"}});
  }
  json files = json::array();
  for (const OutputFile& f : result.files) files.push_back(f.name);

  result.report = json{{"library", {{"name", "logdamp"}, {"version", LOGDAMP_VERSION}}},
                       {"config", config_json(cfg)},
                       {"payload", payload},
                       {"assertions", rows},
                       {"passed", result.passed()},
                       {"files", files}};
  return result;
}

void write_outputs(const RunResult& result, const std::filesystem::path& out,
                   double wall_time_seconds) {
  std::filesystem::create_directories(out);
  auto write = [&](const std::string& name, const std::string& contents) {
    std::ofstream f(out / name, std::ios::binary);
    f << contents;
    if (!f) throw Error("cannot write " + (out / name).string());
  };
  for (const OutputFile& file : result.files) write(file.name, file.contents);
  json report = result.report;
  report["wall_time_s"] = wall_time_seconds;
  write("report.json", report.dump(2) + "\n");
}

}  // namespace logdamp::cli
