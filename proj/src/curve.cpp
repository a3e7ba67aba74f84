#include "cqnls/curve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <initializer_list>
#include <thread>

#include "cqnls/error.hpp"
#include "cqnls/spectral.hpp"

namespace cqnls {

namespace {

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

double relative(double residual, std::initializer_list<double> terms) {
  const double scale = max_abs(terms);
  return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual);
}

// d/dw by a centred difference of two parameter sets; m is differenced
// through whichever half (m or 1 - m) is small.
double dm_domega(const WaveParams& lo, const WaveParams& hi, double h) {
  if (lo.m > 0.5) return -(hi.m_complement - lo.m_complement) / (2.0 * h);
  return (hi.m - lo.m) / (2.0 * h);
}

void check_window(double L, double omega, double h) {
  if (!(h > 0.0)) throw ConfigError("difference step h must be positive");
  const double thr = omega_existence_threshold(L);
  if (!(omega - h > thr)) {
    throw DomainError("difference window [" + std::to_string(omega - h) + ", " +
                      std::to_string(omega + h) +
                      "] crosses the frequency threshold " + std::to_string(thr));
  }
}

WaveParams params_at(double L, double omega) {
  return make_wave_params(L, solve_period(L, omega));
}

}  // namespace

double e_over_k(double m) {
  const auto ki = complete_integrals(EllipticModulus::from_parameter(m));
  return ki.E / ki.K;
}

double inverse_square_integral(const WaveParams& wp) {
  const auto ki = complete_integrals(wp.modulus());
  const double r = ki.E / ki.K;
  return wp.L * ((1.0 - r) / wp.alpha1 + r / wp.alpha2);
}

double default_step(double omega) { return 1e-4 * std::max(1.0, omega); }

CurveSample curve_point(double L, double omega, std::size_t N) {
  CurveSample s;
  s.omega = omega;
  s.L = L;
  s.N = N;
  const auto wave = build_wave(L, omega, N);
  const auto& wp = wave.params;
  const auto& prof = wave.profile;
  s.alpha1 = wp.alpha1;
  s.alpha2 = wp.alpha2;
  s.alpha3 = wp.alpha3;
  s.B = wp.B;
  s.m = wp.m;
  s.m_complement = wp.m_complement;
  const auto ki = complete_integrals(wp.modulus());
  s.K = ki.K;
  s.E = ki.E;
  s.phi_max = *std::max_element(prof.phi.begin(), prof.phi.end());
  s.phi_min = *std::min_element(prof.phi.begin(), prof.phi.end());

  std::vector<double> f2(N), f4(N), f6(N), fi(N), fd(N), fdl(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double p2 = prof.phi[j] * prof.phi[j];
    const double d2 = prof.dphi[j] * prof.dphi[j];
    f2[j] = p2;
    f4[j] = p2 * p2;
    f6[j] = p2 * p2 * p2;
    fi[j] = 1.0 / p2;
    fd[j] = d2;
    fdl[j] = d2 / p2;
  }
  s.mass = periodic_trapezoid(f2, L);
  s.p4 = periodic_trapezoid(f4, L);
  s.p6 = periodic_trapezoid(f6, L);
  s.inv2_quad = periodic_trapezoid(fi, L);
  s.dphi2 = periodic_trapezoid(fd, L);
  s.dphi2_over_phi2 = periodic_trapezoid(fdl, L);
  s.inv2 = inverse_square_integral(wp);
  return s;
}

std::vector<CurveSample> sample_curve(double L, std::span<const double> omegas,
                                      std::size_t N, unsigned jobs) {
  const std::size_t n = omegas.size();
  std::vector<CurveSample> out(n);
  auto work = [&](std::size_t i) {
    try {
      out[i] = curve_point(L, omegas[i], N);
    } catch (const Error& e) {
      CurveSample bad;
      bad.omega = omegas[i];
      bad.L = L;
      bad.N = N;
      bad.error = e.what();
      out[i] = std::move(bad);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!out[i].ok()) continue;
    const bool has_prev = i > 0 && out[i - 1].ok();
    const bool has_next = i + 1 < n && out[i + 1].ok();
    const CurveSample* a = has_prev ? &out[i - 1] : &out[i];
    const CurveSample* b = has_next ? &out[i + 1] : &out[i];
    if (a == b) continue;
    out[i].dmass_domega = (b->mass - a->mass) / (b->omega - a->omega);
    out[i].d2_dd = 0.5 * out[i].dmass_domega;
  }
  return out;
}

SampleInvariants sample_invariants(const CurveSample& s) {
  if (!s.ok()) throw ContractError("invariants requested for a failed sample");
  SampleInvariants v{};
  const double w = s.omega;
  const double e_res = 2.0 * w * s.mass - 1.5 * s.p4 - 4.0 / 3.0 * s.p6 + s.B * s.L;
  v.energy_identity = std::abs(e_res) / std::max(1.0, std::abs(s.B) * s.L);
  const double i_res = 0.5 * s.mass + 2.0 / 3.0 * s.p4 + s.B * s.inv2;
  v.inverse_identity = std::abs(i_res) / std::max(1.0, std::abs(s.B) * s.inv2);
  v.inv2_mismatch = std::abs(s.inv2_quad - s.inv2) / s.inv2;
  v.positive = s.mass > 0.0 && s.p4 > 0.0 && s.p6 > 0.0 && s.inv2 > 0.0 &&
               s.p6 < s.p4 * s.phi_max * s.phi_max;
  v.above_trough = s.alpha2 > 0.0 &&
                   s.phi_min >= std::sqrt(s.alpha2) * (1.0 - 1e-10);
  return v;
}

DerivativeAudit derivative_audit(double L, double omega, double h) {
  check_window(L, omega, h);
  DerivativeAudit a;
  a.L = L;
  a.omega = omega;
  a.h = h;
  const auto c = solve_period(L, omega);
  const auto lo = solve_period(L, omega - h);
  const auto hi = solve_period(L, omega + h);
  const auto wlo = make_wave_params(L, lo);
  const auto whi = make_wave_params(L, hi);
  const auto wc = make_wave_params(L, c);
  a.alpha3 = c.alpha();
  a.dLambda = (hi.alpha() - lo.alpha()) / (2.0 * h);
  a.dk = dm_domega(wlo, whi, h) / (2.0 * std::sqrt(wc.m));
  a.dB = (hi.integration_constant() - lo.integration_constant()) / (2.0 * h);
  a.dalpha1 = (hi.alpha1() - lo.alpha1()) / (2.0 * h);
  a.dalpha2 = (hi.alpha2() - lo.alpha2()) / (2.0 * h);
  a.margin = omega - c.alpha() * c.alpha() - c.alpha();

  // Fixed alpha: the admissible omega-window around w has half-widths
  // -B/alpha (alpha reaches the upper bound) and alpha^2 + alpha - w (lower).
  const double alpha = c.alpha();
  const double reach = std::min(-c.integration_constant() / alpha,
                                alpha * alpha + alpha - omega);
  const double hp = std::min(h, 0.1 * reach);
  const auto plo = AdmissiblePoint::from_alpha(alpha, omega - hp);
  const auto phi = AdmissiblePoint::from_alpha(alpha, omega + hp);
  const auto mlo = plo.modulus();
  const auto mhi = phi.modulus();
  const double dm = mlo.m() > 0.5 ? -(mhi.complement() - mlo.complement()) / (2.0 * hp)
                                  : (mhi.m() - mlo.m()) / (2.0 * hp);
  const auto pc = AdmissiblePoint::from_alpha(alpha, omega);
  a.dk_partial_fd = dm / (2.0 * pc.modulus().k());
  a.dk_partial_closed = modulus_domega(alpha, omega);
  a.dk_partial_rel_err =
      std::abs(a.dk_partial_fd - a.dk_partial_closed) / std::abs(a.dk_partial_closed);
  return a;
}

double d2d_direct(double L, double omega, double h, std::size_t N) {
  check_window(L, omega, h);
  const auto lo = curve_point(L, omega - h, N);
  const auto hi = curve_point(L, omega + h, N);
  return (hi.mass - lo.mass) / (4.0 * h);
}

IdentityEstimate d2d_identity(double L, double omega, double h) {
  check_window(L, omega, h);
  const auto lo = params_at(L, omega - h);
  const auto c = params_at(L, omega);
  const auto hi = params_at(L, omega + h);
  IdentityEstimate r;
  const double inv2 = inverse_square_integral(c);
  r.dB = (hi.B - lo.B) / (2.0 * h);
  r.dinv2 = (inverse_square_integral(hi) - inverse_square_integral(lo)) / (2.0 * h);
  r.term_inv2 = -0.75 * r.dB * inv2;
  r.term_length = -r.dB * L;
  r.term_dinv2 = -0.75 * c.B * r.dinv2;
  const double rhs = r.term_inv2 + r.term_length + r.term_dinv2;
  r.d2 = rhs / (2.0 * (2.0 * omega + 0.375));

  r.alpha1 = c.alpha1;
  r.dalpha1 = (hi.alpha1 - lo.alpha1) / (2.0 * h);
  r.R = -r.dB + 0.75 - r.dalpha1 * (c.alpha1 / 2.0 + 0.375);

  // d(E/K)/dk = (E' K - E K') / K^2 with E' = (E - K)/k = -K (m/2 + tail)/k.
  const auto mod = c.modulus();
  const auto ki = complete_integrals(mod);
  const double k = mod.k();
  const double dE = -ki.K * (0.5 * mod.m() + ki.tail) / k;
  const double dK = complete_K_dk_over_k(mod) * k;
  const double d_ratio = (dE * ki.K - ki.E * dK) / (ki.K * ki.K);
  const double dk_total = dm_domega(lo, hi, h) / (2.0 * k);
  r.third_term = (-d_ratio) * dk_total / c.alpha1;

  auto eka = [](const WaveParams& wp) {
    const auto q = complete_integrals(wp.modulus());
    return q.E / (q.K * wp.alpha2);
  };
  r.dE_over_K_alpha2 = (eka(hi) - eka(lo)) / (2.0 * h);
  return r;
}

double IdentityResiduals::max() const noexcept {
  return std::max({mass_from_moments, virial, mass_derivative, log_derivative});
}

IdentityResiduals identity_audit(const CurveSample& s, const CurveSample& prev,
                                 const CurveSample& next) {
  if (!s.ok() || !prev.ok() || !next.ok()) {
    throw ContractError("identity audit needs three successful samples");
  }
  if (s.L != prev.L || s.L != next.L) {
    throw ContractError("identity audit samples have different periods");
  }
  const double h1 = s.omega - prev.omega;
  const double h2 = next.omega - s.omega;
  if (!(h1 > 0.0 && h2 > 0.0) || std::abs(h1 - h2) > 1e-8 * (h1 + h2)) {
    throw ConfigError("identity audit requires increasing, uniformly spaced frequencies");
  }
  const double span = next.omega - prev.omega;
  const double dM2 = (next.mass - prev.mass) / span;
  const double dM4 = (next.p4 - prev.p4) / span;
  const double dM6 = (next.p6 - prev.p6) / span;
  const double dB = (next.B - prev.B) / span;
  const double w = s.omega;
  const double L = s.L;

  IdentityResiduals r{};
  r.mass_from_moments =
      relative(0.5 * dM4 + 2.0 / 3.0 * dM6 - s.mass, {0.5 * dM4, 2.0 / 3.0 * dM6, s.mass});
  r.virial = relative(0.5 * s.dphi2 + 0.5 * w * s.mass - 0.5 * s.p4 - 0.5 * s.p6,
                      {0.5 * s.dphi2, 0.5 * w * s.mass, 0.5 * s.p4, 0.5 * s.p6});
  r.mass_derivative =
      relative(2.0 * w * dM2 - 0.5 * dM4 + dB * L, {2.0 * w * dM2, 0.5 * dM4, dB * L});
  r.log_derivative = relative(-s.dphi2_over_phi2 + w * L - s.mass - s.p4,
                              {s.dphi2_over_phi2, w * L, s.mass, s.p4});
  return r;
}

}  // namespace cqnls
