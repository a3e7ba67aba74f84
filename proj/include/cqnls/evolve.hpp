#ifndef CQNLS_EVOLVE_HPP
#define CQNLS_EVOLVE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cqnls/spectral.hpp"
#include "cqnls/wave.hpp"

// Periodic time integration of  i u_t + u_xx + |u|^2 u + |u|^4 u = 0.

namespace cqnls {

struct FieldState {
  double L = 0.0;
  std::size_t N = 0;
  std::vector<Complex> u;
  double t = 0.0;
};

FieldState field_from_profile(const Profile& prof);

/// E(u) = 1/2 int |u_x|^2 - |u|^4/2 - |u|^6/3 (spectral u_x, trapezoid rule).
double energy(const FieldState& state);
/// F(u) = 1/2 int |u|^2.
double mass(const FieldState& state);

/// Second-order Strang splitting: exact nonlinear phase rotation for dt/2,
/// exact linear Fourier propagation for dt, nonlinear dt/2 again.
class StrangStepper {
 public:
  StrangStepper(std::size_t N, double L, double dt);

  double dt() const noexcept { return dt_; }
  const FourierGrid& grid() const noexcept { return grid_; }

  void step(FieldState& state) const;
  /// n consecutive steps; adjacent nonlinear half steps are fused, which is
  /// exact because the nonlinear flow leaves |u| unchanged.
  void advance(FieldState& state, std::size_t n) const;

 private:
  void nonlinear(std::vector<Complex>& u, double tau) const;
  void linear(std::vector<Complex>& u) const;
  void check(const FieldState& state) const;

  std::size_t n_;
  double L_;
  double dt_;
  FourierGrid grid_;
  std::vector<Complex> propagator_;  // exp(-i xi^2 dt) / N
  mutable std::vector<Complex> spectrum_;
};

FieldState step_strang(const FieldState& state, double dt);

/// Discrete H^1 inner product sum (u conj(v) + Du conj(Dv)) L/N.
Complex h1_inner(std::span<const Complex> u, std::span<const Complex> v,
                 const FourierGrid& grid);
double h1_norm(std::span<const Complex> u, const FourierGrid& grid);

struct OrbitalFit {
  double distance = 0.0;
  double theta = 0.0;  // minimising phase in (-pi, pi]
};

/// min over theta of ||u - e^{i theta} phi||_{H^1}.
OrbitalFit orbital_fit(const FieldState& state, const Profile& prof);
double orbital_distance(const FieldState& state, const Profile& prof);

/// Max |u_j - u_{N-j}| over the grid.
double parity_defect(std::span<const Complex> u);

enum class Perturbation { mode_cos1, bump, random_even };

const char* to_string(Perturbation p) noexcept;
Perturbation parse_perturbation(const std::string& name);

/// Even, real perturbation shape with unit discrete H^1 norm.
std::vector<double> perturbation_shape(Perturbation kind, std::size_t N, double L,
                                       std::uint64_t seed);

struct StabilityConfig {
  double L = 0.0;
  double omega = 0.0;
  double delta = 1e-3;
  Perturbation perturbation = Perturbation::mode_cos1;
  double t_end = 50.0;
  double dt = 1e-4;
  std::size_t N = 256;
  std::uint64_t seed = 12345;
  std::size_t samples = 200;
};

struct StabilityReport {
  std::vector<double> times;
  std::vector<double> orbital_dist;
  std::vector<double> parity;  // parity defect at each sample time
  double mass0 = 0.0;
  double energy0 = 0.0;
  double mass_drift = 0.0;    // |F(final) - F(initial)|
  double energy_drift = 0.0;  // |E(final) - E(initial)|
  double max_dist = 0.0;
  double max_parity_defect = 0.0;
  std::size_t steps = 0;
  double horizon = 0.0;

  double mass_drift_rel() const noexcept;
  double energy_drift_rel() const noexcept;
};

/// u0 = phi + delta p, evolved to t_end with the orbital distance sampled
/// config.samples times. Throws BlowUpError if ||u||_inf exceeds 1e3 ||phi||_inf.
StabilityReport run_stability(const StabilityConfig& config);
StabilityReport run_stability(const StabilityConfig& config, const Wave& wave);

struct FidelitySample {
  double t = 0.0;
  double sup_error = 0.0;
  double mass = 0.0;
  double energy = 0.0;
};

struct FidelityReport {
  double sup_error = 0.0;          // max |u(t) - e^{i w t} phi|
  double phase_aligned_error = 0.0;  // max |u(t) - e^{i theta*} phi|
  double rotation_rate = 0.0;      // arg <u(t+dt), u(t)> / dt at the end
  double rotation_rel_err = 0.0;
  double mass_drift_rel = 0.0;
  double energy_drift_rel = 0.0;
  std::size_t steps = 0;
  std::vector<FidelitySample> trace;  // empty unless samples > 0
};

/// Evolves the unperturbed wave and compares with the exact rotation,
/// optionally recording `samples` evenly spaced trace points after t = 0.
FidelityReport standing_wave_fidelity(const Wave& wave, double dt, double t_end,
                                      std::size_t samples = 0);

}  // namespace cqnls

#endif  // CQNLS_EVOLVE_HPP
