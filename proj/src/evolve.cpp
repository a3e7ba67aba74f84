#include "cqnls/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cqnls/error.hpp"

namespace cqnls {

namespace {

void require_grid(std::size_t N, double L) {
  if (N < 2 || !is_power_of_two(N)) {
    throw ConfigError("grid size N must be a power of two, got " + std::to_string(N));
  }
  if (!(L > 0.0)) throw ConfigError("period L must be positive");
}

}  // namespace

FieldState field_from_profile(const Profile& prof) {
  FieldState s;
  s.L = prof.L;
  s.N = prof.N;
  s.u.assign(prof.phi.begin(), prof.phi.end());
  return s;
}

double energy(const FieldState& state) {
  if (state.u.size() != state.N) throw ContractError("field size does not match N");
  FourierGrid grid(state.N, state.L);
  const auto du = grid.derivative(std::span<const Complex>(state.u), 1);
  double s = 0.0;
  for (std::size_t j = 0; j < state.N; ++j) {
    const double a2 = std::norm(state.u[j]);
    s += 0.5 * std::norm(du[j]) - 0.25 * a2 * a2 - a2 * a2 * a2 / 6.0;
  }
  return s * state.L / static_cast<double>(state.N);
}

double mass(const FieldState& state) {
  if (state.u.size() != state.N) throw ContractError("field size does not match N");
  double s = 0.0;
  for (const auto& z : state.u) s += std::norm(z);
  return 0.5 * s * state.L / static_cast<double>(state.N);
}

StrangStepper::StrangStepper(std::size_t N, double L, double dt)
    : n_(N), L_(L), dt_(dt), grid_((require_grid(N, L), N), L), propagator_(N),
      spectrum_(N) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const auto xi = grid_.wavenumbers();
  const double inv_n = 1.0 / static_cast<double>(N);
  for (std::size_t j = 0; j < N; ++j) {
    propagator_[j] = std::polar(inv_n, -xi[j] * xi[j] * dt);
  }
}

void StrangStepper::nonlinear(std::vector<Complex>& u, double tau) const {
  for (auto& z : u) {
    const double a2 = std::norm(z);
    z *= std::polar(1.0, tau * (a2 + a2 * a2));
  }
}

void StrangStepper::linear(std::vector<Complex>& u) const {
  grid_.forward(u, spectrum_);
  for (std::size_t j = 0; j < n_; ++j) spectrum_[j] *= propagator_[j];
  grid_.backward(spectrum_, u);
}

void StrangStepper::check(const FieldState& state) const {
  if (state.N != n_ || state.u.size() != n_ || state.L != L_) {
    throw ContractError("field does not match the stepper grid");
  }
}

void StrangStepper::step(FieldState& state) const { advance(state, 1); }

void StrangStepper::advance(FieldState& state, std::size_t n) const {
  check(state);
  if (n == 0) return;
  nonlinear(state.u, 0.5 * dt_);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    linear(state.u);
    nonlinear(state.u, dt_);
  }
  linear(state.u);
  nonlinear(state.u, 0.5 * dt_);
  state.t += static_cast<double>(n) * dt_;
}

FieldState step_strang(const FieldState& state, double dt) {
  StrangStepper stepper(state.N, state.L, dt);
  FieldState out = state;
  stepper.step(out);
  return out;
}

Complex h1_inner(std::span<const Complex> u, std::span<const Complex> v,
                 const FourierGrid& grid) {
  if (u.size() != grid.size() || v.size() != grid.size()) {
    throw ContractError("field size does not match the grid");
  }
  const auto du = grid.derivative(u, 1);
  const auto dv = grid.derivative(v, 1);
  Complex s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    s += u[j] * std::conj(v[j]) + du[j] * std::conj(dv[j]);
  }
  return s * grid.spacing();
}

double h1_norm(std::span<const Complex> u, const FourierGrid& grid) {
  return std::sqrt(std::max(0.0, h1_inner(u, u, grid).real()));
}

OrbitalFit orbital_fit(const FieldState& state, const Profile& prof) {
  if (state.N != prof.N || state.L != prof.L || state.u.size() != prof.phi.size()) {
    throw ContractError("field and profile live on different grids");
  }
  FourierGrid grid(state.N, state.L);
  const std::vector<Complex> phi(prof.phi.begin(), prof.phi.end());
  const Complex pair = h1_inner(state.u, phi, grid);
  OrbitalFit fit;
  fit.theta = std::abs(pair) > 0.0 ? std::arg(pair) : 0.0;
  const Complex rot = std::polar(1.0, fit.theta);
  std::vector<Complex> diff(state.N);
  for (std::size_t j = 0; j < state.N; ++j) diff[j] = state.u[j] - rot * phi[j];
  fit.distance = h1_norm(diff, grid);
  return fit;
}

double orbital_distance(const FieldState& state, const Profile& prof) {
  return orbital_fit(state, prof).distance;
}

double parity_defect(std::span<const Complex> u) {
  double d = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    d = std::max(d, std::abs(u[j] - u[mirror_index(j, u.size())]));
  }
  return d;
}

const char* to_string(Perturbation p) noexcept {
  switch (p) {
    case Perturbation::mode_cos1:
      return "mode_cos1";
    case Perturbation::bump:
      return "bump";
    default:
      return "random_even";
  }
}

Perturbation parse_perturbation(const std::string& name) {
  if (name == "mode_cos1") return Perturbation::mode_cos1;
  if (name == "bump") return Perturbation::bump;
  if (name == "random_even") return Perturbation::random_even;
  throw ConfigError("unknown perturbation '" + name +
                    "' (expected mode_cos1, bump or random_even)");
}

std::vector<double> perturbation_shape(Perturbation kind, std::size_t N, double L,
                                       std::uint64_t seed) {
  require_grid(N, L);
  const double two_pi = 2.0 * std::numbers::pi;
  // Even under j -> N - j by construction: everything is a function of the
  // folded index min(r, N - r).
  auto cos_mode = [N, two_pi](std::size_t n, std::size_t j) {
    std::size_t r = (n * j) % N;
    r = std::min(r, N - r);
    return std::cos(two_pi * static_cast<double>(r) / static_cast<double>(N));
  };
  std::vector<double> p(N, 0.0);
  switch (kind) {
    case Perturbation::mode_cos1:
      for (std::size_t j = 0; j < N; ++j) p[j] = cos_mode(1, j);
      break;
    case Perturbation::bump: {
      const double width = L / 10.0;
      for (std::size_t j = 0; j < N; ++j) {
        const double x = static_cast<double>(std::min(j, N - j)) * L / static_cast<double>(N);
        p[j] = std::exp(-(x / width) * (x / width));
      }
      break;
    }
    case Perturbation::random_even: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> coef(-1.0, 1.0);
      for (std::size_t n = 1; n <= 10; ++n) {
        const double c = coef(rng);
        for (std::size_t j = 0; j < N; ++j) p[j] += c * cos_mode(n, j);
      }
      break;
    }
  }
  FourierGrid grid(N, L);
  const std::vector<Complex> pc(p.begin(), p.end());
  const double nrm = h1_norm(pc, grid);
  for (double& v : p) v /= nrm;
  return p;
}

double StabilityReport::mass_drift_rel() const noexcept {
  return mass_drift / std::abs(mass0);
}

double StabilityReport::energy_drift_rel() const noexcept {
  return energy_drift / std::abs(energy0);
}

StabilityReport run_stability(const StabilityConfig& config) {
  return run_stability(config, build_wave(config.L, config.omega, config.N));
}

StabilityReport run_stability(const StabilityConfig& cfg, const Wave& wave) {
  if (!(cfg.delta >= 0.0)) throw ConfigError("perturbation size delta must be >= 0");
  if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (cfg.samples == 0) throw ConfigError("at least one sample is required");
  const auto& prof = wave.profile;
  if (prof.N != cfg.N || prof.L != cfg.L) {
    throw ContractError("wave does not match the stability configuration");
  }

  const auto total = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
  if (total == 0) throw ConfigError("t_end is shorter than one time step");
  const std::size_t stride = std::max<std::size_t>(1, total / cfg.samples);
  StrangStepper stepper(cfg.N, cfg.L, cfg.dt);

  FieldState state = field_from_profile(prof);
  const auto p = perturbation_shape(cfg.perturbation, cfg.N, cfg.L, cfg.seed);
  for (std::size_t j = 0; j < cfg.N; ++j) state.u[j] += cfg.delta * p[j];

  const double phi_inf = *std::max_element(prof.phi.begin(), prof.phi.end());
  const double ceiling = 1e3 * phi_inf;

  StabilityReport rep;
  rep.mass0 = mass(state);
  rep.energy0 = energy(state);
  auto record = [&] {
    const double d = orbital_distance(state, prof);
    const double par = parity_defect(state.u);
    rep.times.push_back(state.t);
    rep.orbital_dist.push_back(d);
    rep.parity.push_back(par);
    rep.max_dist = std::max(rep.max_dist, d);
    rep.max_parity_defect = std::max(rep.max_parity_defect, par);
  };
  record();
  std::size_t done = 0;
  while (done < total) {
    const std::size_t n = std::min(stride, total - done);
    stepper.advance(state, n);
    done += n;
    // Recompute t from the step count so that sample times do not drift.
    state.t = static_cast<double>(done) * cfg.dt;
    double amp = 0.0;
    for (const auto& z : state.u) {
      const double a = std::abs(z);
      if (!std::isfinite(a)) {
        amp = a;
        break;
      }
      amp = std::max(amp, a);
    }
    if (!(amp <= ceiling)) {
      throw BlowUpError("blow-up detected at t = " + std::to_string(state.t) +
                        ": ||u||_inf exceeds 1e3 ||phi||_inf");
    }
    record();
  }
  rep.steps = total;
  rep.horizon = state.t;
  rep.mass_drift = std::abs(mass(state) - rep.mass0);
  rep.energy_drift = std::abs(energy(state) - rep.energy0);
  return rep;
}

FidelityReport standing_wave_fidelity(const Wave& wave, double dt, double t_end,
                                      std::size_t samples) {
  const auto& prof = wave.profile;
  const double w = wave.params.omega;
  const auto total = static_cast<std::size_t>(std::llround(t_end / dt));
  if (total == 0) throw ConfigError("t_end is shorter than one time step");
  StrangStepper stepper(prof.N, prof.L, dt);
  FieldState state = field_from_profile(prof);
  const double m0 = mass(state);
  const double e0 = energy(state);

  auto sup_error = [&] {
    const Complex phase = std::polar(1.0, w * state.t);
    double e = 0.0;
    for (std::size_t j = 0; j < prof.N; ++j) {
      e = std::max(e, std::abs(state.u[j] - phase * prof.phi[j]));
    }
    return e;
  };
  std::vector<FidelitySample> trace;
  if (samples > 0) trace.push_back({0.0, 0.0, m0, e0});
  const std::size_t stride =
      samples > 0 ? std::max<std::size_t>(1, total / samples) : total;
  std::size_t done = 0;
  while (done < total) {
    const std::size_t n = std::min(stride, total - done);
    stepper.advance(state, n);
    done += n;
    state.t = static_cast<double>(done) * dt;
    if (samples > 0) trace.push_back({state.t, sup_error(), mass(state), energy(state)});
  }

  FidelityReport rep;
  rep.steps = total;
  rep.trace = std::move(trace);
  const Complex exact_phase = std::polar(1.0, w * state.t);
  Complex pair = 0.0;
  for (std::size_t j = 0; j < prof.N; ++j) pair += state.u[j] * prof.phi[j];
  const Complex aligned = std::polar(1.0, std::arg(pair));
  for (std::size_t j = 0; j < prof.N; ++j) {
    rep.sup_error = std::max(rep.sup_error, std::abs(state.u[j] - exact_phase * prof.phi[j]));
    rep.phase_aligned_error =
        std::max(rep.phase_aligned_error, std::abs(state.u[j] - aligned * prof.phi[j]));
  }
  rep.mass_drift_rel = std::abs(mass(state) - m0) / std::abs(m0);
  rep.energy_drift_rel = std::abs(energy(state) - e0) / std::abs(e0);

  FieldState next = state;
  stepper.step(next);
  Complex overlap = 0.0;
  for (std::size_t j = 0; j < prof.N; ++j) overlap += next.u[j] * std::conj(state.u[j]);
  rep.rotation_rate = std::arg(overlap) / dt;
  rep.rotation_rel_err = std::abs(rep.rotation_rate - w) / w;
  return rep;
}

}  // namespace cqnls
