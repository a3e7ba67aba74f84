#include "cqnls/wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "cqnls/error.hpp"
#include "cqnls/spectral.hpp"

namespace cqnls {

namespace {

constexpr double kDegenerateGap = 1e-9;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require_positive_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("frequency omega must be positive, got " + num(omega));
  }
}

// Companion roots of a^2 + a - w and a^2 + 3a/2 - 3w below the admissible set.
double lo_companion(double omega) { return (-1.0 - std::sqrt(1.0 + 4.0 * omega)) / 2.0; }
double hi_companion(double omega) { return (-3.0 - std::sqrt(48.0 * omega + 9.0)) / 4.0; }

double q_of(double a, double omega) { return 16.0 * omega - 4.0 * a * a - 4.0 * a + 3.0; }

double r_of(double a, double omega) {
  return 6.0 * a * a * a + 9.0 * a * a - 18.0 * omega * a + 48.0 * omega * omega +
         9.0 * omega;
}

}  // namespace

double omega_threshold(double L) {
  if (!(L > 0.0)) throw DomainError("period L must be positive, got " + num(L));
  return (std::sqrt(L * L + 16.0 * kPi) / L + 8.0 * kPi / (L * L) - 1.0) / 8.0;
}

double omega_existence_threshold(double L) {
  if (!(L > 0.0)) throw DomainError("period L must be positive, got " + num(L));
  const double c = 4.0 * kPi * kPi / (L * L);
  return (std::sqrt(1.0 + 4.0 * c) - 1.0 + 2.0 * c) / 8.0;
}

double period_infimum(double omega) {
  require_positive_omega(omega);
  const double s = std::sqrt(4.0 * omega + 1.0);
  return 2.0 * kPi / (std::sqrt(s) * std::sqrt(s - 1.0));
}

AlphaBounds alpha_bounds(double omega) {
  require_positive_omega(omega);
  // lo = w / ((sqrt(1+4w)+1)/2) and hi = 3w / ((sqrt(48w+9)+3)/4) avoid the
  // cancellation at small w.
  const double lo = 2.0 * omega / (std::sqrt(1.0 + 4.0 * omega) + 1.0);
  const double hi = 12.0 * omega / (std::sqrt(48.0 * omega + 9.0) + 3.0);
  return {lo, hi};
}

AdmissiblePoint AdmissiblePoint::from_alpha(double alpha, double omega) {
  const auto b = alpha_bounds(omega);
  if (!(alpha > b.lo && alpha < b.hi)) {
    throw DomainError("alpha = " + num(alpha) + " outside the admissible interval (" +
                      num(b.lo) + ", " + num(b.hi) + ") at omega = " + num(omega));
  }
  const double gap_lo = alpha - b.lo;
  const double gap_hi = b.hi - alpha;
  if (gap_lo < kDegenerateGap || gap_hi < kDegenerateGap) {
    throw DegenerateError("alpha = " + num(alpha) +
                          " is within 1e-9 of an admissible bound; the modulus is "
                          "numerically 0 or 1");
  }
  return AdmissiblePoint(omega, alpha, gap_lo, gap_hi);
}

AdmissiblePoint AdmissiblePoint::from_upper_gap(double gap, double omega) {
  const auto b = alpha_bounds(omega);
  if (!(gap > 0.0 && gap < b.hi - b.lo)) {
    throw DomainError("gap below the upper alpha bound must lie in (0, " +
                      num(b.hi - b.lo) + "), got " + num(gap));
  }
  const double alpha = b.hi - gap;
  const double gap_lo = alpha - b.lo;
  if (gap_lo < kDegenerateGap) {
    throw DegenerateError("alpha is within 1e-9 of the equilibrium bound; the modulus "
                          "is numerically 0");
  }
  return AdmissiblePoint(omega, alpha, gap_lo, gap);
}

double AdmissiblePoint::q() const noexcept { return q_of(alpha_, omega_); }

double AdmissiblePoint::alpha1() const noexcept {
  return -(kSqrt3 * std::sqrt(q()) + 2.0 * alpha_ + 3.0) / 4.0;
}

double AdmissiblePoint::alpha2() const noexcept {
  return -gap_hi_ * (alpha_ - hi_companion(omega_)) / alpha1();
}

double AdmissiblePoint::alpha3_minus_alpha2() const noexcept {
  return 12.0 * gap_lo_ * (alpha_ - lo_companion(omega_)) /
         (6.0 * alpha_ + 3.0 + kSqrt3 * std::sqrt(q()));
}

double AdmissiblePoint::alpha3_minus_alpha1() const noexcept {
  return (6.0 * alpha_ + 3.0 + kSqrt3 * std::sqrt(q())) / 4.0;
}

double AdmissiblePoint::alpha2_minus_alpha1() const noexcept {
  return kSqrt3 * std::sqrt(q()) / 2.0;
}

EllipticModulus AdmissiblePoint::modulus() const {
  const double denom = alpha_ * alpha2_minus_alpha1();
  const double m = -alpha1() * alpha3_minus_alpha2() / denom;
  const double mc = alpha2() * alpha3_minus_alpha1() / denom;
  // The smaller half carries full relative precision; rebuild the other.
  if (m <= mc) return EllipticModulus::from_pair(m, 1.0 - m);
  return EllipticModulus::from_pair(1.0 - mc, mc);
}

double AdmissiblePoint::integration_constant() const noexcept {
  return -alpha_ * gap_hi_ * (alpha_ - hi_companion(omega_)) / 3.0;
}

QuarticRoots roots_from_alpha3(double alpha3, double omega) {
  const auto b = alpha_bounds(omega);
  if (!(alpha3 >= b.lo && alpha3 <= b.hi)) {
    throw DomainError("alpha3 = " + num(alpha3) + " outside [" + num(b.lo) + ", " +
                      num(b.hi) + "] at omega = " + num(omega));
  }
  const double sq = kSqrt3 * std::sqrt(std::max(q_of(alpha3, omega), 0.0));
  return {-(sq + 2.0 * alpha3 + 3.0) / 4.0, (sq - 2.0 * alpha3 - 3.0) / 4.0};
}

double modulus_from(double alpha3, double omega) {
  (void)AdmissiblePoint::from_alpha(alpha3, omega);
  const double sq = kSqrt3 * std::sqrt(q_of(alpha3, omega));
  const double a = alpha3;
  return (sq * a - 12.0 * omega + 6.0 * a * a + 9.0 * a) / (2.0 * sq * a);
}

double modulus_from_roots(double alpha1, double alpha2, double alpha3) {
  return -alpha1 * (alpha3 - alpha2) / (alpha3 * (alpha2 - alpha1));
}

double period_map(const AdmissiblePoint& pt) {
  const double K = complete_K(pt.modulus());
  return std::sqrt(8.0) * std::sqrt(kSqrt3) * K /
         (std::sqrt(pt.alpha()) * std::sqrt(std::sqrt(pt.q())));
}

double period_map(double alpha3, double omega) {
  return period_map(AdmissiblePoint::from_alpha(alpha3, omega));
}

double period_map_from_roots(double alpha3, double omega) {
  const auto pt = AdmissiblePoint::from_alpha(alpha3, omega);
  const auto r = roots_from_alpha3(alpha3, omega);
  const double K = complete_K(pt.modulus());
  return 2.0 * kSqrt3 * K / std::sqrt(alpha3 * (r.alpha2 - r.alpha1));
}

double period_map_dalpha(const AdmissiblePoint& pt) {
  const auto mod = pt.modulus();
  const double a = pt.alpha();
  const double w = pt.omega();
  const double q = pt.q();
  const double K = complete_K(mod);
  // (dK/dk)(dk/da) with dk/da = r / (k sqrt3 q^(3/2) a^2).
  const double dK_da = complete_K_dk_over_k(mod) * r_of(a, w) /
                       (kSqrt3 * std::pow(q, 1.5) * a * a);
  const double aq = a * a * q;
  return std::sqrt(8.0) * std::sqrt(kSqrt3) / std::pow(aq, 1.25) *
         (aq * dK_da - a * K * (16.0 * w - 8.0 * a * a - 6.0 * a + 3.0) / 2.0);
}

double period_map_dalpha(double alpha3, double omega) {
  return period_map_dalpha(AdmissiblePoint::from_alpha(alpha3, omega));
}

double modulus_dalpha(double alpha3, double omega) {
  const auto pt = AdmissiblePoint::from_alpha(alpha3, omega);
  const double q = pt.q();
  return r_of(alpha3, omega) /
         (pt.modulus().k() * kSqrt3 * std::pow(q, 1.5) * alpha3 * alpha3);
}

double modulus_domega(double alpha3, double omega) {
  const auto pt = AdmissiblePoint::from_alpha(alpha3, omega);
  const double q = pt.q();
  return -kSqrt3 * (2.0 * alpha3 + 8.0 * omega + 3.0) /
         (pt.modulus().k() * alpha3 * std::pow(q, 1.5));
}

double monotonicity_ratio(double alpha3, double omega) {
  const auto pt = AdmissiblePoint::from_alpha(alpha3, omega);
  const double a = alpha3;
  return a * std::sqrt(3.0 * pt.q()) * (16.0 * omega - 8.0 * a * a - 6.0 * a + 3.0) /
         (2.0 * r_of(a, omega));
}

double integration_constant(double alpha3, double omega) {
  const double a = alpha3;
  return -a * omega + a * a * a / 3.0 + a * a / 2.0;
}

double integration_constant_from_alpha1(double alpha1, double omega) {
  const double a = alpha1;
  return -a * omega + a * a * a / 3.0 + a * a / 2.0;
}

double integration_constant_floor(double omega) {
  require_positive_omega(omega);
  return (1.0 - std::pow(4.0 * omega + 1.0, 1.5) + 6.0 * omega) / 12.0;
}

namespace {

// Log-bisection on the upper gap s of a quantity that decreases in s.
// Returns the final bracket [s_small, s_large].
template <class F>
std::pair<double, double> bisect_log_gap(F&& above_target, double s_small,
                                         double s_large) {
  double t_small = std::log(s_small);
  double t_large = std::log(s_large);
  for (int it = 0; it < 200; ++it) {
    // relative width of the bracket in s
    if (std::expm1(t_large - t_small) <= 1e-14) break;
    const double t_mid = 0.5 * (t_small + t_large);
    if (above_target(std::exp(t_mid))) {
      t_small = t_mid;
    } else {
      t_large = t_mid;
    }
  }
  return {std::exp(t_small), std::exp(t_large)};
}

constexpr double kSmallestGap = 1e-300;

}  // namespace

AdmissiblePoint solve_period(double L, double omega) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError("period L must be positive, got " + num(L));
  }
  require_positive_omega(omega);
  const double t_inf = period_infimum(omega);
  if (!(L > t_inf * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()))) {
    throw NoSolutionError(
        "no dnoidal wave with L = " + num(L) + " at omega = " + num(omega) +
        ": the period infimum at this frequency is " + num(t_inf) +
        "; the frequency threshold is omega > " + num(omega_existence_threshold(L)) +
        " (closed-form threshold " + num(omega_threshold(L)) + ")");
  }
  const auto b = alpha_bounds(omega);
  const double s_large = (b.hi - b.lo) - 2.0 * kDegenerateGap;
  auto psi = [omega](double s) {
    return period_map(AdmissiblePoint::from_upper_gap(s, omega));
  };
  if (psi(s_large) >= L) {
    throw DegenerateError("the wave with L = " + num(L) + " at omega = " + num(omega) +
                          " lies within 1e-9 of the equilibrium; the modulus is "
                          "numerically 0");
  }
  if (psi(kSmallestGap) <= L) {
    throw NumericError("period " + num(L) + " exceeds the representable range");
  }
  auto [s_small, s_big] = bisect_log_gap([&](double s) { return psi(s) > L; },
                                         kSmallestGap, s_large);

  // Two safeguarded Newton steps; dPsi/ds = -dPsi/dalpha.
  double s = 0.5 * (s_small + s_big);
  for (int it = 0; it < 2; ++it) {
    const auto pt = AdmissiblePoint::from_upper_gap(s, omega);
    const double f = period_map(pt) - L;
    const double next = s + f / period_map_dalpha(pt);
    if (next > s_small && next < s_big) s = next;
  }
  auto pt = AdmissiblePoint::from_upper_gap(s, omega);
  const double err = std::abs(period_map(pt) - L);
  if (err > 1e-12 * L) {
    throw NumericError("period solve did not reach 1e-12 relative accuracy (residual " +
                       num(err) + ")");
  }
  return pt;
}

double solve_alpha3(double L, double omega) { return solve_period(L, omega).alpha(); }

AdmissiblePoint point_of_B(double B, double omega) {
  const double floor_B = integration_constant_floor(omega);
  if (!(B > floor_B && B < 0.0)) {
    throw DomainError("integration constant B = " + num(B) + " outside (" +
                      num(floor_B) + ", 0) at omega = " + num(omega));
  }
  const auto b = alpha_bounds(omega);
  const double s_large = (b.hi - b.lo) - 2.0 * kDegenerateGap;
  auto B_of = [omega](double s) {
    return AdmissiblePoint::from_upper_gap(s, omega).integration_constant();
  };
  if (B_of(s_large) >= B) {
    throw DegenerateError("B = " + num(B) +
                          " is too close to the equilibrium value; the modulus is "
                          "numerically 0");
  }
  if (B_of(kSmallestGap) <= B) {
    throw DegenerateError("B = " + num(B) + " is too close to 0");
  }
  auto [s_small, s_big] =
      bisect_log_gap([&](double s) { return B_of(s) > B; }, kSmallestGap, s_large);
  // B increases in alpha, so it decreases in s: dB/ds = -(a^2 + a - w).
  double s = 0.5 * (s_small + s_big);
  for (int it = 0; it < 2; ++it) {
    const auto pt = AdmissiblePoint::from_upper_gap(s, omega);
    const double slope = pt.gap_lo() * (pt.alpha() - lo_companion(omega));
    const double next = s + (pt.integration_constant() - B) / slope;
    if (next > s_small && next < s_big) s = next;
  }
  return AdmissiblePoint::from_upper_gap(s, omega);
}

double period_of_B(double B, double omega) { return period_map(point_of_B(B, omega)); }

double solitary_profile(double omega, double x) {
  require_positive_omega(omega);
  const double c = std::cosh(2.0 * std::sqrt(omega) * x);
  return std::sqrt(12.0 * omega / (3.0 + std::sqrt(48.0 * omega + 9.0) * c));
}

EllipticModulus WaveParams::modulus() const {
  return EllipticModulus::from_pair(m, m_complement);
}

double WaveParams::argument_scale() const noexcept { return 2.0 / (kSqrt3 * g); }

double WaveParams::quarter_period() const { return complete_K(modulus()); }

double WaveParams::profile_at(double x) const {
  const double xr = x - L * std::round(x / L);
  const auto j = jacobi_sn_cn_dn(argument_scale() * std::abs(xr), modulus());
  return std::sqrt(alpha3) * j.dn / std::sqrt(1.0 + beta_sq * j.sn * j.sn);
}

double WaveParams::profile_derivative_at(double x) const {
  const double xr = x - L * std::round(x / L);
  const double s = argument_scale();
  const auto j = jacobi_sn_cn_dn(s * xr, modulus());
  const double D = 1.0 + beta_sq * j.sn * j.sn;
  return -std::sqrt(alpha3) * s * j.sn * j.cn * (m * D + beta_sq * j.dn * j.dn) /
         std::pow(D, 1.5);
}

WaveParams make_wave_params(double L, const AdmissiblePoint& pt) {
  WaveParams wp;
  wp.L = L;
  wp.omega = pt.omega();
  wp.alpha1 = pt.alpha1();
  wp.alpha2 = pt.alpha2();
  wp.alpha3 = pt.alpha();
  const auto mod = pt.modulus();
  wp.m = mod.m();
  wp.m_complement = mod.complement();
  wp.g = 2.0 / std::sqrt(pt.alpha() * pt.alpha2_minus_alpha1());
  wp.beta_sq = -wp.alpha3 * wp.m / wp.alpha1;
  wp.B = pt.integration_constant();
  return wp;
}

VietaDefects vieta_defects(const WaveParams& wp) {
  const double a1 = wp.alpha1, a2 = wp.alpha2, a3 = wp.alpha3;
  return {std::abs(a1 + a2 + a3 + 1.5),
          std::abs(a1 * a2 + a1 * a3 + a2 * a3 + 3.0 * wp.omega),
          std::abs(a1 * a2 * a3 - 3.0 * wp.B)};
}

Profile sample_profile(const WaveParams& wp, std::size_t N) {
  if (N < 64 || !is_power_of_two(N)) {
    throw ConfigError("grid size N must be a power of two >= 64, got " +
                      std::to_string(N));
  }
  FourierGrid grid(N, wp.L);
  Profile prof;
  prof.L = wp.L;
  prof.N = N;
  prof.x = grid.nodes();
  prof.phi.resize(N);
  for (std::size_t j = 0; j <= N / 2; ++j) {
    // Same reduced abscissa for j and N - j, so evenness is exact.
    const double v = wp.profile_at(grid.node(j));
    prof.phi[j] = v;
    prof.phi[mirror_index(j, N)] = v;
  }
  prof.dphi = grid.derivative(std::span<const double>(prof.phi), 1);
  return prof;
}

Wave build_wave(double L, double omega, std::size_t N) {
  if (N < 64 || !is_power_of_two(N)) {
    throw ConfigError("grid size N must be a power of two >= 64, got " +
                      std::to_string(N));
  }
  const auto pt = solve_period(L, omega);
  Wave wave{make_wave_params(L, pt), {}};
  const auto& wp = wave.params;

  const auto v = vieta_defects(wp);
  if (v.sum > 1e-12 || v.pair_sum > 1e-10 || v.product > 1e-10) {
    throw NumericError("root identities violated: sum " + num(v.sum) + ", pairs " +
                       num(v.pair_sum) + ", product " + num(v.product));
  }
  const double B_alt = integration_constant_from_alpha1(wp.alpha1, omega);
  if (std::abs(B_alt - wp.B) > 1e-10) {
    throw NumericError("integration constant disagrees between roots: " + num(wp.B) +
                       " vs " + num(B_alt));
  }
  wave.profile = sample_profile(wp, N);
  return wave;
}

Residuals quadrature_residual(const Profile& prof, const WaveParams& wp) {
  if (prof.phi.size() != prof.N || prof.dphi.size() != prof.N) {
    throw ContractError("profile arrays do not match the grid size");
  }
  FourierGrid grid(prof.N, prof.L);
  const auto d2 = grid.derivative(std::span<const double>(prof.phi), 2);
  const double w = wp.omega;
  Residuals r{0.0, 0.0};
  for (std::size_t j = 0; j < prof.N; ++j) {
    const double p = prof.phi[j];
    const double p2 = p * p;
    const double dp = prof.dphi[j];
    r.r_quad = std::max(
        r.r_quad, std::abs(dp * dp + p2 * p2 * p2 / 3.0 + p2 * p2 / 2.0 - w * p2 - wp.B));
    r.r_ode = std::max(r.r_ode, std::abs(-d2[j] + w * p - p2 * p - p2 * p2 * p));
  }
  return r;
}

ProfileDefects profile_defects(const Profile& prof, const WaveParams& wp) {
  ProfileDefects d{};
  const std::size_t N = prof.N;
  d.min_value = *std::min_element(prof.phi.begin(), prof.phi.end());
  d.argmax = static_cast<std::size_t>(
      std::max_element(prof.phi.begin(), prof.phi.end()) - prof.phi.begin());
  d.argmin = static_cast<std::size_t>(
      std::min_element(prof.phi.begin(), prof.phi.end()) - prof.phi.begin());
  for (std::size_t j = 0; j < N; ++j) {
    d.evenness = std::max(d.evenness, std::abs(prof.phi[j] - prof.phi[mirror_index(j, N)]));
  }
  d.peak = std::abs(prof.phi[0] * prof.phi[0] - wp.alpha3);
  d.trough = std::abs(prof.phi[N / 2] * prof.phi[N / 2] - wp.alpha2);
  return d;
}

}  // namespace cqnls
