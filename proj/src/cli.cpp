#include "cqnls/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cqnls/curve.hpp"
#include "cqnls/error.hpp"
#include "cqnls/hill.hpp"
#include "cqnls/wave.hpp"

namespace cqnls {

namespace {

using I64 = std::int64_t;

I64 as_int(std::size_t v) { return static_cast<I64>(v); }

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double single_omega(const RunConfig& c) {
  if (c.omegas.size() != 1) {
    throw ConfigError("subcommand '" + c.subcommand + "' takes a single --omega value");
  }
  return c.omegas.front();
}

void echo_config(Report& r, const RunConfig& c) {
  r.add_config("L", c.L);
  r.add_config("omega", c.omega_spec);
  r.add_config("N", as_int(c.N));
  r.add_config("dt", c.dt);
  r.add_config("t_end", c.t_end);
  r.add_config("delta", c.delta);
  r.add_config("perturbation", std::string(to_string(c.perturbation)));
  r.add_config("seed", static_cast<I64>(c.seed));
  r.add_config("jobs", static_cast<I64>(c.jobs));
  r.add_config("format", c.format);
}

// ---------------------------------------------------------------- construct

Report run_construct(const RunConfig& c) {
  Report r;
  const double w = single_omega(c);
  const auto wave = build_wave(c.L, w, c.N);
  const auto& wp = wave.params;
  const auto& prof = wave.profile;
  const auto res = quadrature_residual(prof, wp);
  const auto def = profile_defects(prof, wp);
  const auto v = vieta_defects(wp);
  const double B1 = integration_constant_from_alpha1(wp.alpha1, w);
  const auto ki = complete_integrals(wp.modulus());

  r.add_summary("omega_threshold", omega_threshold(c.L));
  r.add_summary("omega_existence_threshold", omega_existence_threshold(c.L));
  r.add_summary("alpha1", wp.alpha1);
  r.add_summary("alpha2", wp.alpha2);
  r.add_summary("alpha3", wp.alpha3);
  r.add_summary("m", wp.m);
  r.add_summary("m_complement", wp.m_complement);
  r.add_summary("g", wp.g);
  r.add_summary("beta_sq", wp.beta_sq);
  r.add_summary("B", wp.B);
  r.add_summary("B_from_alpha1", B1);
  r.add_summary("K", ki.K);
  r.add_summary("period", 2.0 * ki.K / wp.argument_scale());
  r.add_summary("r_quad", res.r_quad);
  r.add_summary("r_ode", res.r_ode);
  r.add_summary("vieta_sum", v.sum);
  r.add_summary("vieta_pairs", v.pair_sum);
  r.add_summary("vieta_product", v.product);
  r.add_summary("phi_min", def.min_value);
  r.add_summary("evenness", def.evenness);
  r.add_summary("peak_defect", def.peak);
  r.add_summary("trough_defect", def.trough);

  r.check("r_quad", res.r_quad <= 1e-8);
  r.check("r_ode", res.r_ode <= 1e-6);
  r.check("vieta", v.sum <= 1e-12 && v.pair_sum <= 1e-10 && v.product <= 1e-10);
  r.check("B_cross", std::abs(B1 - wp.B) <= 1e-10);
  r.check("positive", def.min_value > 0.0);
  r.check("even", def.evenness <= 1e-10);
  r.check("peak", def.argmax == 0 && def.peak <= 1e-10);
  r.check("trough", def.argmin == prof.N / 2 && def.trough <= 1e-8);

  r.columns = {"j", "x", "phi", "dphi"};
  for (std::size_t j = 0; j < prof.N; ++j) {
    r.add_row({as_int(j), prof.x[j], prof.phi[j], prof.dphi[j]});
  }
  return r;
}

// -------------------------------------------------------------------- curve

Report run_curve(const RunConfig& c) {
  Report r;
  const auto samples = sample_curve(c.L, c.omegas, c.N, c.jobs);
  r.columns = {"omega",  "status",       "alpha1",          "alpha2",
               "alpha3", "B",            "m",               "m_complement",
               "mass",   "p4",           "p6",              "inv2",
               "inv2_quad", "dphi2",     "dphi2_over_phi2", "dmass_domega",
               "d2_dd",  "energy_identity", "inverse_identity", "inv2_mismatch",
               "error"};
  std::size_t failed = 0;
  for (const auto& s : samples) {
    if (!s.ok()) {
      ++failed;
      std::vector<Cell> row(r.columns.size(), Cell(std::nan("")));
      row[0] = s.omega;
      row[1] = std::string("error");
      row.back() = *s.error;
      r.add_row(std::move(row));
      continue;
    }
    const auto inv = sample_invariants(s);
    const bool ok = inv.positive && inv.above_trough && inv.energy_identity <= 1e-8 &&
                    inv.inverse_identity <= 1e-8 && inv.inv2_mismatch <= 1e-8;
    if (!ok) r.failures.push_back("invariants at omega = " + format_cell(s.omega));
    r.add_row({s.omega, std::string(ok ? "ok" : "invariant_failure"), s.alpha1, s.alpha2,
               s.alpha3, s.B, s.m, s.m_complement, s.mass, s.p4, s.p6, s.inv2,
               s.inv2_quad, s.dphi2, s.dphi2_over_phi2, s.dmass_domega, s.d2_dd,
               inv.energy_identity, inv.inverse_identity, inv.inv2_mismatch,
               std::string()});
  }
  r.add_summary("samples", as_int(samples.size()));
  r.add_summary("failed_samples", as_int(failed));
  return r;
}

// ----------------------------------------------------------------- spectrum

Report run_spectrum(const RunConfig& c) {
  Report r;
  const double w = single_omega(c);
  const auto wave = build_wave(c.L, w, c.N);
  SpectrumReport reps[2];
  const OperatorKind kinds[2] = {OperatorKind::L1, OperatorKind::L2};
  parallel_for(2, c.jobs, [&](std::size_t i) {
    reps[i] = spectrum_report({kinds[i], wave.params, wave.profile});
  });
  const auto& r1 = reps[0];
  const auto& r2 = reps[1];
  const auto cc = combined_counts(r1, r2);

  auto smallest_positive = [](const SpectrumReport& s) {
    for (double lam : s.eigenvalues) {
      if (lam > s.tol_zero) return lam;
    }
    return std::nan("");
  };
  r.add_summary("tol_zero", r1.tol_zero);
  for (const auto* s : {&r1, &r2}) {
    const std::string p = to_string(s->kind);
    r.add_summary(p + ".n_negative", static_cast<I64>(s->n_negative));
    r.add_summary(p + ".zero_multiplicity", static_cast<I64>(s->zero_multiplicity));
    r.add_summary(p + ".zero_index",
                  s->zero_index ? as_int(*s->zero_index) : static_cast<I64>(-1));
    r.add_summary(p + ".zero_match_error", s->zero_match_error);
    r.add_summary(p + ".smallest_positive", smallest_positive(*s));
    r.add_summary(p + ".max_residual", s->max_residual);
  }
  r.add_summary("full.n_negative", static_cast<I64>(cc.full_negative));
  r.add_summary("full.zero", static_cast<I64>(cc.full_zero));
  r.add_summary("even.n_negative", static_cast<I64>(cc.even_negative));
  r.add_summary("even.zero", static_cast<I64>(cc.even_zero));

  const bool l1_zero_odd = r1.zero_index && r1.parity[*r1.zero_index] == Parity::odd;
  r.check("L1.one_negative", r1.n_negative == 1);
  r.check("L1.zero_simple", r1.zero_multiplicity == 1 && l1_zero_odd);
  r.check("L1.zero_matches_dphi", r1.zero_match_error <= 1e-4);
  r.check("L1.zero_sign_changes",
          r1.zero_index && r1.sign_changes[*r1.zero_index] == 2);
  r.check("L2.no_negative", r2.n_negative == 0);
  r.check("L2.ground_state_zero",
          r2.zero_index == 0 && r2.zero_multiplicity == 1 && r2.parity[0] == Parity::even);
  r.check("L2.zero_matches_phi", r2.zero_match_error <= 1e-4);
  r.check("full_counts", cc.full_negative == 1 && cc.full_zero == 2);
  r.check("even_counts", cc.even_negative == 1 && cc.even_zero == 1 &&
                             cc.even_zero_carriers ==
                                 std::vector<OperatorKind>{OperatorKind::L2});
  r.check("gap_above_zero", std::min(smallest_positive(r1), smallest_positive(r2)) >
                                1e-3 * w);

  r.columns = {"operator", "index", "eigenvalue", "parity", "parity_defect",
               "sign_changes"};
  for (const auto* s : {&r1, &r2}) {
    for (std::size_t k = 0; k < s->eigenvalues.size(); ++k) {
      r.add_row({std::string(to_string(s->kind)), as_int(k), s->eigenvalues[k],
                 std::string(to_string(s->parity[k])), s->parity_defect[k],
                 static_cast<I64>(s->sign_changes[k])});
    }
  }
  return r;
}

// -------------------------------------------------------------------- theta

double dT_dB_fd(double B, double omega) {
  const double h = 1e-6 * std::abs(B);
  return (period_of_B(B + h, omega) - period_of_B(B - h, omega)) / (2.0 * h);
}

Report run_theta(const RunConfig& c) {
  Report r;
  r.columns = {"omega", "B", "theta", "dT_dB", "relation_error", "wronskian_defect",
               "phi_dd0", "steps"};
  std::vector<std::vector<Cell>> rows(c.omegas.size());
  std::vector<std::string> fails(c.omegas.size());
  parallel_for(c.omegas.size(), c.jobs, [&](std::size_t i) {
    const double w = c.omegas[i];
    const auto wp = make_wave_params(c.L, solve_period(c.L, w));
    const auto th = theta_constant(wp, c.dt);
    const double d = dT_dB_fd(wp.B, w);
    const double rel = std::abs(d + th.theta / 2.0) / std::abs(th.theta);
    rows[i] = {w, wp.B, th.theta, d, rel, th.wronskian_defect, th.phi_dd0,
               as_int(th.steps)};
    if (!(th.theta < 0.0 && d > 0.0 && rel <= 1e-4)) {
      fails[i] = "theta relation at omega = " + format_cell(w);
    }
  });
  for (auto& row : rows) r.add_row(std::move(row));
  for (auto& f : fails) {
    if (!f.empty()) r.failures.push_back(f);
  }
  return r;
}

// ------------------------------------------------------------------- evolve

Report run_evolve(const RunConfig& c) {
  Report r;
  const double w = single_omega(c);
  const auto wave = build_wave(c.L, w, c.N);
  const auto f = standing_wave_fidelity(wave, c.dt, c.t_end, 200);
  r.add_summary("steps", as_int(f.steps));
  r.add_summary("sup_error", f.sup_error);
  r.add_summary("phase_aligned_error", f.phase_aligned_error);
  r.add_summary("rotation_rate", f.rotation_rate);
  r.add_summary("rotation_rel_err", f.rotation_rel_err);
  r.add_summary("mass_drift_rel", f.mass_drift_rel);
  r.add_summary("energy_drift_rel", f.energy_drift_rel);
  r.check("sup_error", f.sup_error <= 1e-6, format_cell(f.sup_error));
  r.check("rotation_rate", f.rotation_rel_err <= 1e-6);
  r.check("mass_drift", f.mass_drift_rel <= 1e-10);
  r.check("energy_drift", f.energy_drift_rel <= 1e-8);
  r.columns = {"t", "sup_error", "mass", "energy"};
  for (const auto& s : f.trace) r.add_row({s.t, s.sup_error, s.mass, s.energy});
  return r;
}

// ---------------------------------------------------------------- stability

Report run_stability_cmd(const RunConfig& c) {
  Report r;
  StabilityConfig sc;
  sc.L = c.L;
  sc.omega = single_omega(c);
  sc.delta = c.delta;
  sc.perturbation = c.perturbation;
  sc.t_end = c.t_end;
  sc.dt = c.dt;
  sc.N = c.N;
  sc.seed = c.seed;
  const auto rep = run_stability(sc);
  r.add_summary("horizon", rep.horizon);
  r.add_summary("steps", as_int(rep.steps));
  r.add_summary("max_dist", rep.max_dist);
  r.add_summary("max_parity_defect", rep.max_parity_defect);
  r.add_summary("mass_drift", rep.mass_drift);
  r.add_summary("energy_drift", rep.energy_drift);
  r.add_summary("mass_drift_rel", rep.mass_drift_rel());
  r.add_summary("energy_drift_rel", rep.energy_drift_rel());
  r.check("orbital_distance", rep.max_dist <= 1e-2, format_cell(rep.max_dist));
  r.check("parity", rep.max_parity_defect <= 1e-8);
  r.check("mass_drift", rep.mass_drift_rel() <= 1e-10);
  r.check("energy_drift", rep.energy_drift_rel() <= 1e-8);
  r.columns = {"t", "orbital_dist", "parity_defect"};
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    r.add_row({rep.times[i], rep.orbital_dist[i], rep.parity[i]});
  }
  return r;
}

// -------------------------------------------------------------------- audit

Report run_audit(const RunConfig& c) {
  Report r;
  if (c.omega_is_range && c.omegas.size() < 3) {
    throw ConfigError("audit sweeps need at least 3 frequencies (start:stop:count)");
  }
  r.columns = {"omega",          "h",
               "alpha3",         "dLambda",
               "dk_total",       "dB",
               "dalpha1",        "dalpha2",
               "dk_partial_fd",  "dk_partial_closed",
               "dk_partial_rel_err", "margin",
               "dT_dB",          "d2_direct",
               "d2_identity",    "d2_agreement",
               "R",              "third_term",
               "dE_over_K_alpha2", "id_mass_from_moments",
               "id_virial",      "id_mass_derivative",
               "id_log_derivative", "inv2_mismatch",
               "failed_checks"};
  std::vector<std::vector<Cell>> rows(c.omegas.size());
  parallel_for(c.omegas.size(), c.jobs, [&](std::size_t i) {
    const double w = c.omegas[i];
    const double h = default_step(w);
    const auto a = derivative_audit(c.L, w, h);
    const double dd = d2d_direct(c.L, w, h, c.N);
    const auto id = d2d_identity(c.L, w, h);
    const std::vector<double> triple{w - h, w, w + h};
    const auto cs = sample_curve(c.L, triple, c.N);
    for (const auto& s : cs) {
      if (!s.ok()) throw DomainError(*s.error);
    }
    const auto ia = identity_audit(cs[1], cs[0], cs[2]);
    const auto inv = sample_invariants(cs[1]);
    const auto wp = make_wave_params(c.L, solve_period(c.L, w));
    const double dtdb = dT_dB_fd(wp.B, w);
    const double agree = std::abs(dd - id.d2) / std::abs(dd);

    std::vector<std::string> failed;
    auto need = [&](const char* name, bool ok) {
      if (!ok) failed.emplace_back(name);
    };
    need("dLambda>0", a.dLambda_positive());
    need("dB<0", a.dB_negative());
    need("dalpha1>0", a.dalpha1_positive());
    need("dalpha2<0", a.dalpha2_negative());
    need("dk_closed_form", a.dk_closed_form_matches());
    need("dk<0", a.dk_closed_form_negative());
    need("margin>0", a.margin_positive());
    need("dT/dB>0", dtdb > 0.0);
    need("d2>0", dd > 0.0 && id.d2 > 0.0);
    need("d2_agreement", agree <= 1e-4);
    need("identities", ia.max() <= 1e-5);
    need("inv2_closed_form", inv.inv2_mismatch <= 1e-8);
    need("R>0", id.R > 0.0);
    need("third_term>0", id.third_term > 0.0);
    need("dE_over_K_alpha2>0", id.dE_over_K_alpha2 > 0.0);
    std::string joined;
    for (const auto& f : failed) joined += (joined.empty() ? "" : ";") + f;

    rows[i] = {w,
               h,
               a.alpha3,
               a.dLambda,
               a.dk,
               a.dB,
               a.dalpha1,
               a.dalpha2,
               a.dk_partial_fd,
               a.dk_partial_closed,
               a.dk_partial_rel_err,
               a.margin,
               dtdb,
               dd,
               id.d2,
               agree,
               id.R,
               id.third_term,
               id.dE_over_K_alpha2,
               ia.mass_from_moments,
               ia.virial,
               ia.mass_derivative,
               ia.log_derivative,
               inv.inv2_mismatch,
               joined};
  });
  for (auto& row : rows) {
    const auto& failed = std::get<std::string>(row.back());
    if (!failed.empty()) {
      r.failures.push_back("omega = " + format_cell(row.front()) + ": " + failed);
    }
    r.add_row(std::move(row));
  }
  return r;
}

constexpr const char* kColumnsHelp =
    "Report columns (CSV header / JSON record keys):\n"
    "  construct: j, x, phi, dphi  (wave parameters and residuals in the summary)\n"
    "  curve:     omega, status, alpha1, alpha2, alpha3, B, m, m_complement, mass, p4,\n"
    "             p6, inv2, inv2_quad, dphi2, dphi2_over_phi2, dmass_domega, d2_dd,\n"
    "             energy_identity, inverse_identity, inv2_mismatch, error\n"
    "  spectrum:  operator, index, eigenvalue, parity, parity_defect, sign_changes\n"
    "  theta:     omega, B, theta, dT_dB, relation_error, wronskian_defect, phi_dd0,\n"
    "             steps\n"
    "  evolve:    t, sup_error, mass, energy\n"
    "  stability: t, orbital_dist, parity_defect\n"
    "  audit:     omega, h, alpha3, dLambda, dk_total, dB, dalpha1, dalpha2,\n"
    "             dk_partial_fd, dk_partial_closed, dk_partial_rel_err, margin,\n"
    "             dT_dB, d2_direct, d2_identity, d2_agreement, R, third_term,\n"
    "             dE_over_K_alpha2, id_mass_from_moments, id_virial,\n"
    "             id_mass_derivative, id_log_derivative, inv2_mismatch,\n"
    "             failed_checks\n"
    "Exit codes: 0 success, 1 domain/config error, 2 failed check or numeric\n"
    "error, 3 I/O error, 64 usage error.\n";

}  // namespace

std::vector<double> parse_omega(const std::string& spec, bool* is_range) {
  auto to_double = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) {
      throw ConfigError("cannot parse frequency '" + s + "' in --omega " + spec);
    }
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) {
    if (is_range) *is_range = false;
    return {to_double(parts[0])};
  }
  if (parts.size() != 3) {
    throw ConfigError("--omega expects a value or start:stop:count, got " + spec);
  }
  const double a = to_double(parts[0]);
  const double b = to_double(parts[1]);
  const double cnt = to_double(parts[2]);
  if (!(cnt >= 1.0) || cnt != std::floor(cnt)) {
    throw ConfigError("range count must be a positive integer, got " + parts[2]);
  }
  const auto n = static_cast<std::size_t>(cnt);
  if (n > 1 && !(b > a)) throw ConfigError("range stop must exceed start");
  if (is_range) *is_range = true;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

Report run(const RunConfig& c) {
  Report r;
  if (c.subcommand == "construct") {
    r = run_construct(c);
  } else if (c.subcommand == "curve") {
    r = run_curve(c);
  } else if (c.subcommand == "spectrum") {
    r = run_spectrum(c);
  } else if (c.subcommand == "theta") {
    r = run_theta(c);
  } else if (c.subcommand == "evolve") {
    r = run_evolve(c);
  } else if (c.subcommand == "stability") {
    r = run_stability_cmd(c);
  } else if (c.subcommand == "audit") {
    r = run_audit(c);
  } else {
    throw ConfigError("unknown subcommand '" + c.subcommand + "'");
  }
  r.subcommand = c.subcommand;
  Report out;
  out.subcommand = c.subcommand;
  echo_config(out, c);
  out.summary = std::move(r.summary);
  out.columns = std::move(r.columns);
  out.rows = std::move(r.rows);
  out.failures = std::move(r.failures);
  return out;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dnoidal standing waves of the cubic-quintic NLS: construction, "
               "spectral and stability audits."};
  app.footer(kColumnsHelp);
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig c;
  c.L = 2.0 * std::numbers::pi;
  std::string omega = "2";
  std::string perturbation = "mode_cos1";
  double dt = 0.0;
  double t_end = 0.0;
  app.add_option("--L", c.L, "period L (default 2 pi)");
  app.add_option("--omega", omega, "frequency w, or start:stop:count (default 2)");
  app.add_option("--N", c.N, "grid size, a power of two >= 64 (default 256)");
  app.add_option("--dt", dt,
                 "time step (default 1e-4; theta: RK4 step, default L/1e5)");
  app.add_option("--t-end", t_end, "final time (default 10 for evolve, 50 for stability)");
  app.add_option("--delta", c.delta, "perturbation size (default 1e-3)");
  app.add_option("--perturbation", perturbation, "mode_cos1 | bump | random_even");
  app.add_option("--seed", c.seed, "seed for random_even (default 12345)");
  app.add_option("--jobs", c.jobs, "worker threads for sweeps (default 1)");
  app.add_option("--output", c.output, "output file, '-' for stdout (default)");
  app.add_option("--format", c.format,
                 "csv | json (default json for construct, spectrum, theta, audit; "
                 "csv otherwise)");

  const std::pair<const char*, const char*> subs[] = {
      {"construct", "solve for the wave and sample its profile"},
      {"curve", "sweep the fixed-period curve over --omega"},
      {"spectrum", "eigen-decompose the linearised operators L1 and L2"},
      {"theta", "theta constant and its relation to dT/dB"},
      {"evolve", "evolve the unperturbed wave and compare with e^{i w t} phi"},
      {"stability", "evolve phi + delta p and track the orbital distance"},
      {"audit", "derivative signs, d''(w) by two routes and integral identities"},
  };
  for (const auto& [name, help] : subs) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    c.omega_spec = omega;
    c.omegas = parse_omega(omega, &c.omega_is_range);
    c.perturbation = parse_perturbation(perturbation);
    const bool theta = c.subcommand == "theta";
    c.dt = dt > 0.0 ? dt : (theta ? c.L / 1e5 : 1e-4);
    if (app.count("--dt") && !(dt > 0.0)) throw ConfigError("--dt must be positive");
    c.t_end = t_end > 0.0 ? t_end : (c.subcommand == "stability" ? 50.0 : 10.0);
    if (app.count("--t-end") && !(t_end > 0.0)) {
      throw ConfigError("--t-end must be positive");
    }
    if (c.jobs == 0) throw ConfigError("--jobs must be at least 1");
    if (c.format.empty()) {
      const bool csv = c.subcommand == "curve" || c.subcommand == "evolve" ||
                       c.subcommand == "stability";
      c.format = csv ? "csv" : "json";
    }
    if (c.format != "csv" && c.format != "json") {
      throw ConfigError("--format must be csv or json");
    }

    const Report report = run(c);

    std::ofstream file;
    std::ostream* os = &out;
    if (c.output != "-") {
      file.open(c.output);
      if (!file) {
        err << "error: cannot open output file " << c.output << "\n";
        return kExitIo;
      }
      os = &file;
    }
    if (c.format == "csv") {
      write_csv(*os, report);
    } else {
      write_json(*os, report);
    }
    os->flush();
    if (!*os) {
      err << "error: failed writing the report\n";
      return kExitIo;
    }
    if (!report.failures.empty()) {
      for (const auto& f : report.failures) err << "check failed: " << f << "\n";
      return kExitAssertion;
    }
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
}

}  // namespace cqnls
